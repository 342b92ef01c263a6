#include "engel/maxwell.hpp"

#include "engel/elliptic.hpp"
#include "engel/errors.hpp"
#include "engel/expmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace engel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kFdStep = 1e-5;
constexpr double kRootTol = 1e-12;

void require_open_K(double p, double k2, const char* who) {
  const double K = complete_K(k2);
  if (!(p > 0.0 && p < K)) throw DomainError(std::string(who) + ": p must lie in (0, K)");
}

double sgn(double v) { return (v > 0.0) - (v < 0.0); }

// Printed closed forms of (f/g)' where they exist.
std::optional<double> printed_slope(FFunc f, GFunc g, double p, const FParams& prm) {
  const JacobiBundle j = jacobi(p, prm.k2);
  const double s2 = j.sn * j.sn, c2 = j.cn * j.cn;
  if (f == FFunc::fy && g == GFunc::fy_weight) {
    return 4.0 * prm.alpha * prm.alpha * s2 * c2 * j.dn / (1.0 - prm.k2 * (1.0 - c2 * c2));
  }
  if (f == FFunc::f2 && g == GFunc::dn) {
    return prm.alpha * prm.alpha * s2 * c2 / (prm.ae * prm.ae * j.dn * j.dn);
  }
  if (f == FFunc::f3 && g == GFunc::cndn) {
    const double w = 1.0 - prm.k2;
    return w * w * s2 / (c2 * j.dn * j.dn);
  }
  return std::nullopt;
}

}  // namespace

double f_y(double p, double k2, double ae, double alpha) {
  require_open_K(p, k2, "f_y");
  return eval_f(FFunc::fy, p, {k2, ae, alpha});
}

double f1(double p, double k2, double ae, double alpha) {
  if (!(p > 0.0)) throw DomainError("f1: p must be positive");
  return eval_f(FFunc::f1, p, {k2, ae, alpha});
}

double f2(double p, double k2, double ae, double energy, F2Reading reading) {
  require_open_K(p, k2, "f2");
  FParams prm{k2, ae, 1.0, energy};
  prm.f2_reading = reading;
  return eval_f(FFunc::f2, p, prm);
}

double f3(double p, double k2) {
  require_open_K(p, k2, "f3");
  return eval_f(FFunc::f3, p, {k2});
}

double f4(double p, double k2, F4Sign sign) {
  require_open_K(p, k2, "f4");
  FParams prm{k2};
  prm.f4_sign = sign;
  return eval_f(FFunc::f4, p, prm);
}

double eval_f(FFunc f, double p, const FParams& prm) {
  const double m = prm.k2, ae = prm.ae, a = prm.alpha;
  const JacobiBundle j = jacobi(p, m);
  const double s = j.sn, c = j.cn, d = j.dn, ep = j.eps;
  switch (f) {
    case FFunc::fy: {
      const double ae4 = ae * ae * ae * ae;
      return -16.0 * ae4 * m * m * c * c * c * d * s + (16.0 * ae4 * m * ep - a * a * p) * (d * d - m * c * c * s * s);
    }
    case FFunc::f1: return a * p * c * d + ae * ae * (2.0 * c * d * ep - (1.0 + m) * s + 2.0 * m * s * s * s);
    case FFunc::f2: {
      const double lead = prm.f2_reading == F2Reading::EnergyTimesP ? prm.energy * p : ep;
      return -lead * d - ae * ae * (2.0 * d * ep - m * c * s);
    }
    case FFunc::f3: return c * d * ((1.0 - m) * p - 2.0 * ep) + (1.0 + m) * s - 2.0 * m * s * s * s;
    case FFunc::f4: {
      const double printed = 2.0 * c * ep - p * c - d * s;
      return prm.f4_sign == F4Sign::Printed ? printed : -printed;
    }
  }
  return 0.0;
}

double eval_g(GFunc g, double p, const FParams& prm) {
  const JacobiBundle j = jacobi(p, prm.k2);
  switch (g) {
    case GFunc::fy_weight: {
      const double c2 = j.cn * j.cn;
      return prm.k2 * (1.0 - prm.k2 * (1.0 - c2 * c2));
    }
    case GFunc::dn: return j.dn;
    case GFunc::cndn: return j.cn * j.dn;
    case GFunc::cn: return j.cn;
  }
  return 0.0;
}

const char* to_string(FFunc f) {
  switch (f) {
    case FFunc::fy: return "f_y";
    case FFunc::f1: return "f1";
    case FFunc::f2: return "f2";
    case FFunc::f3: return "f3";
    case FFunc::f4: return "f4";
  }
  return "?";
}

const char* to_string(GFunc g) {
  switch (g) {
    case GFunc::fy_weight: return "k2*(1-k2*(1-cn^4))";
    case GFunc::dn: return "dn";
    case GFunc::cndn: return "cn*dn";
    case GFunc::cn: return "cn";
  }
  return "?";
}

namespace {

// Sum of |terms| of f: its rounding error is eps times this, not eps times |f|.
double term_scale(FFunc f, double p, const FParams& prm) {
  const double m = prm.k2, ae = prm.ae, a = prm.alpha;
  const JacobiBundle j = jacobi(p, m);
  const double s = std::abs(j.sn), c = std::abs(j.cn), d = std::abs(j.dn), ep = std::abs(j.eps);
  const double ae2 = ae * ae;
  switch (f) {
    case FFunc::fy: {
      const double ae4 = ae2 * ae2;
      return 16.0 * ae4 * m * m * c * c * c * d * s + (16.0 * ae4 * std::abs(m) * ep + a * a * p) * (d * d + std::abs(m) * c * c * s * s);
    }
    case FFunc::f1: return std::abs(a) * p * c * d + ae2 * (2.0 * c * d * ep + std::abs(1.0 + m) * s + 2.0 * std::abs(m) * s * s * s);
    case FFunc::f2: {
      const double lead = prm.f2_reading == F2Reading::EnergyTimesP ? std::abs(prm.energy) * p : ep;
      return lead * d + ae2 * (2.0 * d * ep + std::abs(m) * c * s);
    }
    case FFunc::f3: return c * d * (std::abs(1.0 - m) * p + 2.0 * ep) + std::abs(1.0 + m) * s + 2.0 * std::abs(m) * s * s * s;
    case FFunc::f4: return 2.0 * c * ep + p * c + d * s;
  }
  return 0.0;
}

}  // namespace

ComparisonResult comparison_check(FFunc f, GFunc g, const FParams& prm, double p_lo, double p_hi, int n) {
  ComparisonResult res;
  res.g_min = kInf;
  res.ratio_slope_min = kInf;
  auto ratio = [&](double p) { return eval_f(f, p, prm) / eval_g(g, p, prm); };
  const double width = p_hi - p_lo;
  bool slope_ok = true;
  bool printed_ok = true;
  for (int i = 1; i <= n; ++i) {
    const double p = p_lo + width * i / (n + 1.0);
    const double gv = eval_g(g, p, prm);
    res.g_min = std::min(res.g_min, gv);
    double lo = p - kFdStep, hi = p + kFdStep;
    if (lo <= p_lo) lo = p;
    if (hi >= p_hi) hi = p;
    const double rl = ratio(lo), rh = ratio(hi);
    const double slope = (rh - rl) / (hi - lo);
    res.ratio_slope_min = std::min(res.ratio_slope_min, slope);
    const double scale = term_scale(f, lo, prm) / std::abs(eval_g(g, lo, prm)) +
                         term_scale(f, hi, prm) / std::abs(eval_g(g, hi, prm));
    const double noise = 64.0 * kEps * scale / (hi - lo) + 1e-12;
    if (slope < -noise) slope_ok = false;
    if (i % 97 == 0) {
      if (const auto ps = printed_slope(f, g, p, prm)) {
        res.has_printed_slope = true;
        if (std::abs(*ps - slope) > 1e-4 * std::max(1.0, std::abs(slope))) printed_ok = false;
      }
    }
  }
  res.printed_slope_agrees = res.has_printed_slope && printed_ok;
  res.ratio_left = ratio(p_lo + 1e-4);
  if (!(res.g_min > 0.0)) {
    res.failing = "g > 0";
  } else if (!slope_ok) {
    res.failing = "(f/g)' >= 0";
  } else if (!(std::abs(res.ratio_left) < 1e-8)) {
    res.failing = "f/g -> 0 at left endpoint";
  }
  res.ok = res.failing.empty();
  return res;
}

Scan scan_f(FFunc f, const FParams& prm, double p_lo, double p_hi, double step) {
  Scan out;
  out.min = kInf;
  double prev_p = p_lo + step;
  double prev_v = eval_f(f, prev_p, prm);
  out.min = prev_v;
  for (double p = prev_p + step; p <= p_hi + 0.5 * step; p += step) {
    const double pp = std::min(p, p_hi);
    const double v = eval_f(f, pp, prm);
    out.min = std::min(out.min, v);
    if (!out.first_root && sgn(v) != sgn(prev_v)) {
      double lo = prev_p, hi = pp, vlo = prev_v;
      if (v == 0.0) {
        lo = hi = pp;
      }
      while (hi - lo > kRootTol) {
        const double mid = 0.5 * (lo + hi);
        const double vm = eval_f(f, mid, prm);
        if (sgn(vm) == sgn(vlo)) {
          lo = mid;
          vlo = vm;
        } else {
          hi = mid;
        }
      }
      out.first_root = 0.5 * (lo + hi);
      out.bracket = hi - lo;
    }
    prev_p = pp;
    prev_v = v;
  }
  return out;
}

std::vector<double> roots_f1(const FParams& prm, double p_max) {
  const double step = complete_K(prm.k2) / 2048.0;
  std::vector<double> roots;
  double lo = 0.0;
  while (lo < p_max) {
    const Scan s = scan_f(FFunc::f1, prm, lo, p_max, step);
    if (!s.first_root) break;
    roots.push_back(*s.first_root);
    lo = *s.first_root + 1e-9;
  }
  return roots;
}

MidpointCoords midpoint(const RectifiedCoords& rc, double t) {
  return {rc.psi0 + 0.5 * rc.ae * t, 0.5 * rc.ae * t};
}

FParams maxwell_params(const RectifiedCoords& rc) {
  FParams prm;
  prm.k2 = rc.k2;
  prm.ae = rc.ae;
  prm.alpha = rc.alpha;
  prm.energy = rc.energy;
  return prm;
}

FactorizedXY factorized_xy(const Covector& lambda, double t) {
  const Stratum s = classify(lambda);
  const RectifiedCoords rc = rectify(lambda);
  const MidpointCoords mp = midpoint(rc, t);
  const double a = rc.alpha, E = rc.energy, ae = rc.ae, m = rc.k2;
  FactorizedXY out;
  const JacobiBundle jt = jacobi(mp.tau, m);
  const JacobiBundle jp = jacobi(mp.p, m);
  const double st = jt.sn, ct = jt.cn, dt = jt.dn, sp = jp.sn, cp = jp.cn;
  const FParams prm = maxwell_params(rc);
  switch (s) {
    case Stratum::TL_Cplus:
    case Stratum::TL_Cminus: {
      out.fval = eval_f(FFunc::fy, mp.p, prm);
      out.angular = -st * ct * dt /
                    (a * std::abs(a) * ae * ae * m * (ct * ct - dt * dt * sp * sp) * (1.0 - m * sp * sp * st * st));
      break;
    }
    case Stratum::SL_C1: {
      const double den = 1.0 - m * sp * sp * st * st;
      const double r = 2.0 * std::sqrt(2.0 * (a + E));
      out.x1 = r * ct * dt * sp / (a * den);
      out.fval = eval_f(FFunc::f1, mp.p, prm);
      out.angular = r * st / (a * a * ae * den);
      break;
    }
    case Stratum::SL_C2: {
      const double den = ct * ct - sp * sp * dt * dt;
      const double r = 2.0 * rc.sign * std::sqrt(2.0) * std::sqrt(-a - E);
      out.x1 = -r * dt * cp * sp / (a * den);
      out.fval = eval_f(FFunc::f2, mp.p, prm);
      out.angular = r * ct * st / (a * a * ae * den);
      break;
    }
    case Stratum::SL_C3: {
      if (m >= 0.0) {
        const double den = ct * ct - dt * dt * sp * sp;
        out.x1 = 4.0 * rc.sign * sp * st / (ae * den);
        out.fval = eval_f(FFunc::f3, mp.p, prm);
        out.angular = -4.0 * rc.sign * ct * dt / (ae * ae * (1.0 - m) * (1.0 - m) * den);
      } else {
        // Imaginary modulus: rewrite with k~^2 = (alpha - E)/(2 alpha) and
        // argument sqrt(alpha)*phi.
        const double kt2 = (a - E) / (2.0 * a);
        const double sa = std::sqrt(a);
        const double tau = sa * (rc.phi0 + 0.5 * t);
        const double p = 0.5 * sa * t;
        const JacobiBundle jt2 = jacobi(tau, kt2);
        const JacobiBundle jp2 = jacobi(p, kt2);
        const double den = jt2.cn * jt2.cn - jt2.dn * jt2.dn * jp2.sn * jp2.sn;
        const double r = 2.0 * std::sqrt(2.0) * std::sqrt(a + E) * rc.sign;
        out.x1 = r * jt2.dn * jt2.sn * jp2.dn * jp2.sn / (a * den);
        FParams p4;
        p4.k2 = kt2;
        out.fval = eval_f(FFunc::f4, p, p4);
        // Negated prefactor pairs with the normalized (positive) f4.
        out.angular = -r * jt2.cn / (a * sa * den);
      }
      break;
    }
    default: throw StratumError(std::string("factorized_xy: no factorized display for ") + to_string(s));
  }
  out.y = out.angular * out.fval;
  if (lambda.branch < 0 && out.x1) {
    // Branch -1 images: timelike flips x1 and y, spacelike flips y only.
    if (lambda.causal == Family::Timelike) *out.x1 = -*out.x1;
  }
  if (lambda.branch < 0) {
    out.y = -out.y;
    out.angular = -out.angular;
  }
  return out;
}

CutBound cut_time_bound(const Covector& lambda) {
  const Stratum s = classify(lambda);
  switch (s) {
    case Stratum::SL_C1: {
      const RectifiedCoords rc = rectify(lambda);
      return {4.0 * complete_K(rc.k2) / rc.ae, false};
    }
    case Stratum::SL_C2:
    case Stratum::SL_C3: return {t_supr(lambda), false};
    default: return {kInf, true};
  }
}

MaxwellReport maxwell_times(const Covector& lambda) {
  const Stratum s = classify(lambda);
  MaxwellReport rep;
  rep.stratum = s;
  if (!(s == Stratum::TL_Cplus || s == Stratum::TL_Cminus || s == Stratum::SL_C1 || s == Stratum::SL_C2 ||
        s == Stratum::SL_C3)) {
    throw StratumError(std::string("maxwell_times: no Maxwell analysis for ") + to_string(s));
  }
  const RectifiedCoords rc = rectify(lambda);
  const FParams prm = maxwell_params(rc);
  const double K = complete_K(rc.k2);
  const double step = K / 2048.0;
  const CutBound cb = cut_time_bound(lambda);
  rep.cut_bound = cb.value;
  rep.no_bound = cb.no_bound;

  auto positivity = [&](FFunc f) {
    const Scan sc = scan_f(f, prm, 0.0, K - step, step);
    rep.f_name = to_string(f);
    rep.grid_min = sc.min;
    rep.first_root = sc.first_root;
    rep.root_bracket = sc.bracket;
    return sc.min > 0.0 && !sc.first_root;
  };

  switch (s) {
    case Stratum::TL_Cplus:
    case Stratum::TL_Cminus: rep.max2_empty = positivity(FFunc::fy); break;
    case Stratum::SL_C2:
      rep.max1_empty = positivity(FFunc::f2);
      // x1 carries dn(tau) cn(p) sn(p), which has no zero for p in (0, K).
      rep.max2_empty = true;
      break;
    case Stratum::SL_C3:
      rep.max1_empty = positivity(FFunc::f3);
      // x1 vanishes only where sn(tau) = 0, which the set excludes.
      rep.max2_empty = true;
      break;
    case Stratum::SL_C1: {
      const Scan sc = scan_f(FFunc::f1, prm, 0.0, 8.0 * K, step);
      rep.f_name = "f1";
      rep.grid_min = sc.min;
      rep.first_root = sc.first_root;
      rep.root_bracket = sc.bracket;
      if (sc.first_root) rep.t_max1 = 2.0 * *sc.first_root / rc.ae;
      rep.t_max2 = 4.0 * K / rc.ae;
      rep.max1_empty = !sc.first_root.has_value();
      rep.max2_empty = false;
      break;
    }
    default: break;
  }
  return rep;
}

}  // namespace engel

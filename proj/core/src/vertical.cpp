#include "engel/vertical.hpp"

#include "engel/elliptic.hpp"
#include "engel/errors.hpp"
#include "engel/expmap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace engel {

namespace {

constexpr double kCoshLimit = 700.0;
constexpr double kEdge = 1e-9;

double sgn(double v) { return (v > 0.0) - (v < 0.0); }

void check_theta(double theta) {
  if (!(std::abs(theta) < kCoshLimit)) throw OverflowError("cosh(theta) overflows, theta = " + std::to_string(theta));
}

// Phase solve on C+ for c = -2 ae sc(psi) dn(psi), monotone decreasing on (-K, K).
double solve_tl_phase(double c, double ae, double k2) {
  const double K = complete_K(k2);
  auto cfun = [&](double psi) {
    const JacobiBundle j = jacobi(psi, k2);
    return -2.0 * ae * j.sn / j.cn * j.dn;
  };
  double lo = -K + kEdge;
  double hi = K - kEdge;
  if (c > cfun(lo) || c < cfun(hi)) throw InversionError("c outside the range of the C+ chart");
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, K); ++i) {
    const double mid = 0.5 * (lo + hi);
    (cfun(mid) > c ? lo : hi) = mid;
  }
  double psi = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) {
    const JacobiBundle j = jacobi(psi, k2);
    const double dc = -2.0 * ae * (j.dn * j.dn / (j.cn * j.cn) - k2 * j.sn * j.sn);
    const double step = (cfun(psi) - c) / dc;
    if (!std::isfinite(step)) break;
    psi -= step;
  }
  if (!std::isfinite(psi) || std::abs(psi) >= K) throw InversionError("C+ phase solve left (-K, K)");
  return psi;
}

Covector expand_branch(const Covector& reduced, Family causal, int branch) {
  Covector out = reduced;
  out.causal = causal;
  out.branch = branch;
  if (branch < 0) {
    out.c = -reduced.c;
    if (causal == Family::Spacelike) out.alpha = -reduced.alpha;
  }
  return out;
}

Covector from_costate(const CostateState& s, Family causal, int branch) {
  Covector out;
  out.causal = causal;
  out.branch = branch;
  out.theta = causal == Family::Timelike ? std::asinh(s[5]) : std::asinh(s[4]);
  out.c = s[6];
  out.alpha = s[7];
  return out;
}

CostateState chart_to_vec(const ChartState& s) {
  CostateState v;
  v << s.q.x1, s.q.x2, s.q.y, s.q.z, s.theta, s.c, s.alpha, 0.0;
  return v;
}

ChartState vec_to_chart(const CostateState& v) { return {v[4], v[5], v[6], {v[0], v[1], v[2], v[3]}}; }

template <class F>
CostateState rk4_step(const F& f, const CostateState& y, double h) {
  const CostateState k1 = f(y);
  const CostateState k2 = f(y + 0.5 * h * k1);
  const CostateState k3 = f(y + 0.5 * h * k2);
  const CostateState k4 = f(y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct Integrator {
  Covector lambda;
  OracleForm form;
  CostateState y;
  double h0 = 0.0;
  double e0 = 0.0;
  ExtremalArc arc;

  Integrator(const Covector& l, OracleForm f) : lambda(l), form(f) {
    if (l.causal == Family::Lightlike) throw StratumError("integrate: lightlike covector, use integrate_lightlike");
    check_theta(l.theta);
    if (form == OracleForm::Costate) {
      y << 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0;
      y.tail<4>() = l.costate();
    } else {
      y = chart_to_vec({l.theta, l.c, l.alpha, {}});
    }
    const Eigen::Vector4d h = l.costate();
    h0 = hamiltonian_H({}, h);
    e0 = energy(l);
    arc.lambda = l;
    arc.stratum = classify(l);
    arc.t_supr = t_supr(l);
    record(0.0);
  }

  CostateState rhs(const CostateState& s) const {
    if (form == OracleForm::Costate) return costate_rhs(s);
    return chart_to_vec(full_rhs(vec_to_chart(s), lambda.causal, lambda.branch));
  }

  void step(double h) {
    y = rk4_step([this](const CostateState& s) { return rhs(s); }, y, h);
    if (!y.allFinite()) throw OverflowError("integrate: trajectory is no longer finite");
  }

  void record(double t) {
    Covector cur;
    Eigen::Vector4d h;
    if (form == OracleForm::Costate) {
      cur = from_costate(y, lambda.causal, lambda.branch);
      h = y.tail<4>();
    } else {
      cur = lambda;
      cur.theta = y[4];
      cur.c = y[5];
      check_theta(cur.theta);
      h = cur.costate();
    }
    const double H = hamiltonian_H({}, h);
    const double E = h[2] * h[2] / 2.0 - h[1] * h[3];
    const double dh = std::abs(H - h0);
    const double de = std::abs(E - e0);
    arc.h_drift = std::max(arc.h_drift, dh);
    arc.e_drift = std::max(arc.e_drift, de);
    arc.h_drift_rel = std::max(arc.h_drift_rel, dh / std::max(1.0, h[0] * h[0] + h[1] * h[1]));
    arc.e_drift_rel =
        std::max(arc.e_drift_rel, de / std::max(1.0, h[2] * h[2] / 2.0 + std::abs(h[1] * h[3])));
    arc.times.push_back(t);
    arc.points.push_back({y[0], y[1], y[2], y[3]});
    arc.theta.push_back(cur.theta);
    arc.c.push_back(cur.c);
  }
};

}  // namespace

Eigen::Vector4d Covector::costate() const {
  const double ch = std::cosh(theta);
  const double sh = std::sinh(theta);
  const double b = branch < 0 ? -1.0 : 1.0;
  if (causal == Family::Spacelike) return {sh, b * ch, c, alpha};
  if (causal == Family::Timelike) return {b * ch, sh, c, alpha};
  return {1.0, b, 0.0, 0.0};
}

const char* to_string(Stratum s) {
  switch (s) {
    case Stratum::TL_C00: return "TL_C00";
    case Stratum::TL_C0: return "TL_C0";
    case Stratum::TL_Cplus: return "TL_Cplus";
    case Stratum::TL_Cminus: return "TL_Cminus";
    case Stratum::SL_C1: return "SL_C1";
    case Stratum::SL_C2: return "SL_C2";
    case Stratum::SL_C3: return "SL_C3";
    case Stratum::SL_C4: return "SL_C4";
    case Stratum::SL_C5: return "SL_C5";
    case Stratum::SL_C6: return "SL_C6";
    case Stratum::SL_C7: return "SL_C7";
    case Stratum::LIGHT_plus: return "LIGHT_plus";
    case Stratum::LIGHT_minus: return "LIGHT_minus";
    case Stratum::UNRESOLVED_BOUNDARY: return "UNRESOLVED_BOUNDARY";
  }
  return "?";
}

Stratum stratum_from_string(const std::string& name) {
  for (int i = 0; i <= static_cast<int>(Stratum::UNRESOLVED_BOUNDARY); ++i) {
    const auto s = static_cast<Stratum>(i);
    if (name == to_string(s)) return s;
  }
  throw DomainError("unknown stratum '" + name + "'");
}

bool is_timelike(Stratum s) { return s <= Stratum::TL_Cminus; }

bool is_rectifiable(Stratum s) {
  switch (s) {
    case Stratum::TL_Cplus:
    case Stratum::TL_Cminus:
    case Stratum::SL_C1:
    case Stratum::SL_C2:
    case Stratum::SL_C3:
    case Stratum::SL_C4: return true;
    default: return false;
  }
}

double hamiltonian_H(const GroupPoint& /*q*/, const Eigen::Vector4d& h) {
  return 0.5 * (-h[0] * h[0] + h[1] * h[1]);
}

ChartState full_rhs(const ChartState& s, Family causal, int branch) {
  if (causal == Family::Lightlike) throw StratumError("full_rhs: lightlike has no chart");
  check_theta(s.theta);
  const double b = branch < 0 ? -1.0 : 1.0;
  const double ch = std::cosh(s.theta);
  const double sh = std::sinh(s.theta);
  const double h1 = causal == Family::Timelike ? b * ch : sh;
  const double h2 = causal == Family::Timelike ? sh : b * ch;
  const auto& q = s.q;
  ChartState d;
  d.q.x1 = -h1;
  d.q.x2 = h2;
  d.q.y = 0.5 * (q.x1 * h2 + q.x2 * h1);
  d.q.z = 0.5 * (q.x1 * q.x1 + q.x2 * q.x2) * h2;
  d.theta = -b * s.c;
  d.c = causal == Family::Timelike ? -b * s.alpha * ch : -s.alpha * sh;
  d.alpha = 0.0;
  return d;
}

CostateState costate_rhs(const CostateState& s) {
  const double x1 = s[0], x2 = s[1];
  const double h1 = s[4], h2 = s[5], h3 = s[6], h4 = s[7];
  CostateState d;
  d << -h1, h2, 0.5 * (x1 * h2 + x2 * h1), 0.5 * (x1 * x1 + x2 * x2) * h2, -h2 * h3, -h1 * h3, -h1 * h4, 0.0;
  return d;
}

double energy(const Covector& lambda) {
  const Eigen::Vector4d h = lambda.costate();
  return 0.5 * h[2] * h[2] - h[1] * h[3];
}

Covector on_branch(const Covector& reduced, int branch) {
  if (reduced.causal == Family::Lightlike) return reduced;
  return expand_branch(reduce_branch(reduced), reduced.causal, branch < 0 ? -1 : 1);
}

Covector reduce_branch(const Covector& lambda) {
  if (lambda.branch >= 0 || lambda.causal == Family::Lightlike) return lambda;
  Covector r = lambda;
  r.branch = 1;
  r.c = -lambda.c;
  if (lambda.causal == Family::Spacelike) r.alpha = -lambda.alpha;
  return r;
}

Stratum classify(const Covector& lambda) {
  if (lambda.causal == Family::Lightlike) return lambda.branch < 0 ? Stratum::LIGHT_minus : Stratum::LIGHT_plus;
  const Covector r = reduce_branch(lambda);
  const bool a0 = std::abs(r.alpha) < kAlphaBand;
  const bool c0 = std::abs(r.c) < kCBand;
  if (r.causal == Family::Timelike) {
    if (a0) return c0 ? Stratum::TL_C00 : Stratum::TL_C0;
    return r.alpha > 0.0 ? Stratum::TL_Cplus : Stratum::TL_Cminus;
  }
  if (a0) return c0 ? Stratum::SL_C7 : Stratum::SL_C6;
  const double d = energy(r) + r.alpha;
  const bool th0 = std::abs(r.theta) < kThetaBand;
  if (r.alpha < 0.0) return (c0 && th0) ? Stratum::SL_C5 : Stratum::SL_C1;
  if (std::abs(d) < kEnergyBand) {
    if (c0 && th0) return Stratum::SL_C5;
    if (!c0 && !th0) return Stratum::SL_C4;
    return Stratum::UNRESOLVED_BOUNDARY;
  }
  return d < 0.0 ? Stratum::SL_C2 : Stratum::SL_C3;
}

RectifiedCoords rectify(const Covector& lambda, Mode mode) {
  const Stratum s = classify(lambda);
  if (!is_rectifiable(s)) throw StratumError(std::string("rectify: stratum ") + to_string(s) + " has no rectifying chart");
  const Covector r = reduce_branch(lambda);
  const double a = r.alpha;
  const double E = energy(r);
  const bool verbatim = mode == Mode::Verbatim;

  RectifiedCoords rc;
  rc.energy = E;
  rc.alpha = a;
  rc.stratum = s;
  rc.causal = lambda.causal;
  rc.branch = lambda.branch < 0 ? -1 : 1;
  rc.mode = mode;

  switch (s) {
    case Stratum::TL_Cplus:
    case Stratum::TL_Cminus: {
      rc.ae = std::sqrt(std::sqrt(E * E + a * a) / 2.0);
      rc.k2 = 0.5 + E / (4.0 * rc.ae * rc.ae);
      // C- is solved on its epsilon^1 mirror image, which lies in C+.
      const double cc = (s == Stratum::TL_Cminus && !verbatim) ? -r.c : r.c;
      rc.psi0 = solve_tl_phase(cc, rc.ae, rc.k2);
      break;
    }
    case Stratum::SL_C1: {
      rc.k2 = (E + a) / (E - a);
      rc.ae = std::sqrt((E - a) / 2.0);
      const double sn0 = std::clamp(r.c / std::sqrt(2.0 * (E + a)), -1.0, 1.0);
      const double sig = verbatim ? sgn(a * std::sinh(r.theta)) : sgn(std::sinh(r.theta));
      const double cn0 = sig * std::sqrt(std::max(0.0, 1.0 - sn0 * sn0));
      rc.psi0 = ellip_f(std::atan2(sn0, cn0), rc.k2);
      break;
    }
    case Stratum::SL_C2: {
      rc.k2 = 2.0 * a / (a - E);
      rc.ae = std::sqrt((a - E) / 2.0);
      rc.sign = sgn(r.theta);
      const double sc0 = (verbatim ? 1.0 : -1.0) * r.c * rc.sign / std::sqrt(2.0 * (-a - E));
      rc.psi0 = ellip_f(std::atan(sc0), rc.k2);
      break;
    }
    case Stratum::SL_C3: {
      rc.k2 = (E - a) / (E + a);
      rc.ae = std::sqrt((E + a) / 2.0);
      rc.sign = sgn(r.c);
      const double w = std::abs(r.c) / (2.0 * rc.ae);
      const double cn0 = std::min(1.0, std::sqrt((1.0 - rc.k2) / (w * w - rc.k2)));
      const double sig = (verbatim ? 1.0 : -1.0) * sgn(std::sinh(r.theta)) * rc.sign;
      const double sn0 = sig * std::sqrt(std::max(0.0, 1.0 - cn0 * cn0));
      rc.psi0 = ellip_f(std::atan2(sn0, cn0), rc.k2);
      break;
    }
    case Stratum::SL_C4: {
      rc.ae = std::sqrt(a);
      rc.k2 = 1.0;
      rc.sign = sgn(r.theta);
      const double q = r.c * rc.sign / (4.0 * rc.ae);
      const double root = std::sqrt(1.0 + 4.0 * q * q);
      const double u = q > 0.0 ? (1.0 + root) / (2.0 * q) : (1.0 - root) / (2.0 * q);
      rc.psi0 = std::log(u / rc.ae);
      break;
    }
    default: break;
  }
  if (!std::isfinite(rc.psi0)) throw InversionError("rectify: non-finite phase");
  rc.phi0 = rc.psi0 / rc.ae;
  return rc;
}

Covector unrectify(const RectifiedCoords& rc, double psi) {
  const double a = rc.alpha;
  const double E = rc.energy;
  const bool verbatim = rc.mode == Mode::Verbatim;
  Covector r;
  r.causal = rc.causal;
  r.alpha = a;
  double sh = 0.0;
  if (rc.stratum == Stratum::SL_C4) {
    const double u = rc.ae * std::exp(psi);
    const double d = u * u - 1.0;
    r.c = rc.sign * 4.0 * rc.ae * u / d;
    sh = rc.sign * 4.0 * u * (u * u + 1.0) / (d * d);
  } else {
    const JacobiBundle j = jacobi(psi, rc.k2);
    const double cn2 = j.cn * j.cn;
    switch (rc.stratum) {
      case Stratum::TL_Cplus:
      case Stratum::TL_Cminus: {
        const double flip = (rc.stratum == Stratum::TL_Cminus && !verbatim) ? -1.0 : 1.0;
        r.c = -flip * 2.0 * rc.ae * j.sn / j.cn * j.dn;
        sh = 2.0 * rc.ae * rc.ae * (1.0 - rc.k2 * (1.0 + cn2 * cn2)) / (a * cn2);
        break;
      }
      case Stratum::SL_C1:
        r.c = std::sqrt(2.0 * (E + a)) * j.sn;
        sh = (verbatim ? 1.0 : -1.0) * std::sqrt(E - a) * std::sqrt(E + a) * j.cn * j.dn / a;
        break;
      case Stratum::SL_C2:
        r.c = (verbatim ? 1.0 : -1.0) * rc.sign * std::sqrt(2.0 * (-a - E)) * j.sn / j.cn;
        sh = rc.sign * std::sqrt(-a - E) * std::sqrt(a - E) * j.dn / (a * cn2);
        break;
      case Stratum::SL_C3:
        r.c = rc.sign * 2.0 * rc.ae * j.dn / j.cn;
        sh = (verbatim ? 1.0 : -1.0) * rc.sign * 2.0 * j.sn / cn2;
        break;
      default: throw StratumError("unrectify: stratum has no rectifying chart");
    }
  }
  r.theta = std::asinh(sh);
  return expand_branch(r, rc.causal, rc.branch);
}

Covector vertical_flow(const Covector& lambda, double t) {
  const Stratum s = classify(lambda);
  if (is_rectifiable(s)) {
    const RectifiedCoords rc = rectify(lambda);
    return unrectify(rc, rc.psi0 + rc.ae * t);
  }
  if (s == Stratum::UNRESOLVED_BOUNDARY || s == Stratum::LIGHT_plus || s == Stratum::LIGHT_minus) {
    throw StratumError(std::string("vertical_flow: no flow for ") + to_string(s));
  }
  // alpha = 0 or the equilibrium C5: c is constant and theta' = -c on branch +1.
  Covector r = reduce_branch(lambda);
  r.theta = r.theta - r.c * t;
  return expand_branch(r, lambda.causal, lambda.branch < 0 ? -1 : 1);
}

ExtremalArc integrate(const Covector& lambda, double T, int n, OracleForm form) {
  if (n < 16) throw DomainError("integrate: need at least 16 steps");
  if (!(T > 0.0)) throw DomainError("integrate: T must be positive");
  Integrator it(lambda, form);
  if (!(T < it.arc.t_supr)) throw DomainError("integrate: T must be below t_supr");
  const double h = T / n;
  for (int i = 1; i <= n; ++i) {
    it.step(h);
    it.record(i == n ? T : i * h);
  }
  return it.arc;
}

ExtremalArc integrate_at(const Covector& lambda, const std::vector<double>& times, int n, OracleForm form) {
  if (n < 16) throw DomainError("integrate_at: need at least 16 steps");
  if (times.empty()) throw DomainError("integrate_at: empty time list");
  const double T = times.back();
  if (!(T > 0.0)) throw DomainError("integrate_at: last time must be positive");
  Integrator it(lambda, form);
  if (!(T < it.arc.t_supr)) throw DomainError("integrate_at: times must stay below t_supr");
  // The arc keeps t = 0 followed by the requested times only.
  double prev = 0.0;
  for (double t : times) {
    if (t < prev) throw DomainError("integrate_at: times must be non-decreasing");
    const int m = std::max(1, static_cast<int>(std::lround(n * (t - prev) / T)));
    const double h = (t - prev) / m;
    if (t > prev) {
      for (int i = 0; i < m; ++i) it.step(h);
    }
    it.record(t);
    prev = t;
  }
  return it.arc;
}

std::vector<GroupPoint> integrate_lightlike(double T, int n, int branch) {
  if (n < 1) throw DomainError("integrate_lightlike: need at least one step");
  const double b = branch < 0 ? -1.0 : 1.0;
  auto f = [b](const CostateState& s) {
    CostateState d = CostateState::Zero();
    d[0] = 1.0;
    d[1] = b;
    d[2] = 0.5 * (-s[1] + b * s[0]);
    d[3] = 0.5 * b * (s[0] * s[0] + s[1] * s[1]);
    return d;
  };
  CostateState y = CostateState::Zero();
  std::vector<GroupPoint> out{GroupPoint{}};
  const double h = T / n;
  for (int i = 0; i < n; ++i) {
    y = rk4_step(f, y, h);
    out.push_back({y[0], y[1], y[2], y[3]});
  }
  return out;
}

}  // namespace engel

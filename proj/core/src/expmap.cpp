#include "engel/expmap.hpp"

#include "engel/elliptic.hpp"
#include "engel/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace engel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRefuseMargin = 1e-6;
constexpr double kSampleMargin = 1e-3;

struct Ends {
  JacobiBundle j0;
  JacobiBundle j1;
  double de;  // eps(psi_t) - eps(psi_0)
};

Ends ends(const RectifiedCoords& rc, double t) {
  Ends e{jacobi(rc.psi0, rc.k2), jacobi(rc.psi0 + rc.ae * t, rc.k2), 0.0};
  e.de = e.j1.eps - e.j0.eps;
  return e;
}

GroupPoint exp_tl_elliptic(const RectifiedCoords& rc, double t) {
  const double a = rc.alpha, A = std::abs(a), ae = rc.ae, m = rc.k2;
  const Ends e = ends(rc, t);
  const double s0 = e.j0.sn, c0 = e.j0.cn, d0 = e.j0.dn;
  const double s1 = e.j1.sn, c1 = e.j1.cn, d1 = e.j1.dn;
  GroupPoint q;
  q.x1 = 2.0 * ae / A * (s0 / c0 * d0 - s1 / c1 * d1);
  q.x2 = (4.0 * ae * (ae * (1.0 - m) * t - e.de) - A * q.x1) / a;
  q.y = -2.0 * ae * ae / (a * A) * (m * (c1 * c1 - c0 * c0) + (1.0 - m) * (1.0 / (c1 * c1) - 1.0 / (c0 * c0))) +
        ae / A * (d0 * s0 / c0 + d1 * s1 / c1) * q.x2;
  const double bracket = 2.0 * ae * (m - 1.0) * t +
                         (1.0 - m) * (d1 * s1 / (c1 * c1 * c1) - d0 * s0 / (c0 * c0 * c0)) +
                         m * (c1 * d1 * s1 - c0 * d0 * s0) - 2.0 * e.de * (2.0 * m - 1.0);
  q.z = q.x2 * q.x2 * q.x2 / 6.0 + 4.0 * ae * ae * ae / (3.0 * a * a * a) * bracket -
        2.0 * ae * d0 * s0 * (ae * d0 * s0 / c0 / A * q.x2 - 0.5 * q.x1 * q.x2 - q.y) / (c0 * A) -
        2.0 * ae * ae * (2.0 * m - 1.0) * q.x1 / (3.0 * a * A);
  return q;
}

GroupPoint exp_c1(const RectifiedCoords& rc, double t) {
  const double a = rc.alpha, E = rc.energy, ae = rc.ae;
  const Ends e = ends(rc, t);
  const double s0 = e.j0.sn, c0 = e.j0.cn, d0 = e.j0.dn;
  const double s1 = e.j1.sn, c1 = e.j1.cn, d1 = e.j1.dn;
  const double root = std::sqrt(a + E);
  GroupPoint q;
  q.x1 = std::sqrt(2.0) * root / a * (s1 - s0);
  q.x2 = -2.0 * ae / a * e.de - t;
  q.y = root / (std::sqrt(2.0) * a * a) * (2.0 * ae * (c1 * d1 - c0 * d0 + e.de * (s1 + s0)) + a * (s1 + s0) * t);
  q.z = q.x2 * q.x2 * q.x2 / 6.0 +
        1.0 / (3.0 * a * a * a) *
            (2.0 * ae *
                 ((a + E) * (c1 * d1 * (s1 - s0) - 2.0 * (c1 * d1 - c0 * d0) * s0) -
                  (E + 3.0 * (a + E) * s0 * s0) * e.de) +
             a * (a - E - 3.0 * (a + E) * s0 * s0) * t);
  return q;
}

// Antiderivative used by the C2 z coordinate; see README for the derivation
// outline. G(psi_t) - G(psi_0) replaces the printed z bracket.
double c2_G(double u, const RectifiedCoords& rc, double S0) {
  const double a = rc.alpha, E = rc.energy, m = rc.k2, kp2 = 1.0 - m;
  const double beta = (a + E) / a;
  const double gam = -E / a;
  const JacobiBundle j = jacobi(u, m);
  const double S = j.sn / j.cn;
  const double J2 = (j.dn * S - j.eps) / kp2;
  const double Jc = u + J2;
  const double f = j.sn * j.dn / (j.cn * j.cn * j.cn);
  const double Jc2 = (f - 2.0 * (m - kp2) * Jc + m * u) / (3.0 * kp2);
  const double J4 = Jc2 - 2.0 * Jc + u;
  const double J13 = -(beta / (2.0 * kp2)) * j.dn / (j.cn * j.cn);
  return gam * J2 - beta * J4 - 2.0 * S0 * J13 + S0 * S0 * gam * u - S0 * S0 * beta * J2;
}

GroupPoint exp_c2(const RectifiedCoords& rc, double t) {
  const double a = rc.alpha, E = rc.energy, ae = rc.ae, sg = rc.sign;
  const Ends e = ends(rc, t);
  const double s0 = e.j0.sn, c0 = e.j0.cn, d0 = e.j0.dn;
  const double s1 = e.j1.sn, c1 = e.j1.cn, d1 = e.j1.dn;
  const double sc0 = s0 / c0, sc1 = s1 / c1;
  const double root = std::sqrt(-a - E);
  GroupPoint q;
  q.x1 = -std::sqrt(2.0) * root * sg / a * (sc1 - sc0);
  q.x2 = -(2.0 * ae * (e.de + d0 * sc0 - d1 * sc1) + E * t) / a;
  q.y = -root * sg / (std::sqrt(2.0) * a * a) *
        (E * (sc0 + sc1) * t + 2.0 * ae * ((sc0 + sc1) * e.de + (d1 - d0) * (1.0 - sc0 * sc1)));
  const double x23 = q.x2 * q.x2 * q.x2 / 6.0;
  if (rc.mode == Mode::Verbatim) {
    const double c02 = c0 * c0, c12 = c1 * c1;
    q.z = x23 + 2.0 * ae * (3.0 * (a + E) * s0 * s0 - E * c02) / (3.0 * a * a * a * c02) * e.de +
          1.0 / (3.0 * a * a * a * ae * c12 * c1 * c02 * c0) *
              (2.0 * ae *
               (c1 * (a * (c12 * d0 * (1.0 - 3.0 * c02) + 3.0 * c02 * d1) +
                      (c12 * d0 * (1.0 - 4.0 * c02) + 3.0 * c02 * d1) * E) *
                    s0 -
                c0 * d1 * (a * c02 + 3.0 * a * s0 * s0 * c12 + (3.0 * c12 + c02 * (1.0 - 4.0 * c12)) * E) * s1)) +
          (a + E) * (c02 * (a - 4.0 * E) + 3.0 * E) / (3.0 * a * a * a * c02) * t;
  } else {
    const double A = -std::sqrt(2.0) * root * sg / a;
    q.z = x23 + A * A / (2.0 * ae) * (c2_G(rc.psi0 + ae * t, rc, sc0) - c2_G(rc.psi0, rc, sc0));
  }
  return q;
}

GroupPoint exp_c3(const RectifiedCoords& rc, double t) {
  const double ae = rc.ae, k2 = rc.k2, sg = rc.sign;
  const Ends e = ends(rc, t);
  const double s0 = e.j0.sn, c0 = e.j0.cn, d0 = e.j0.dn;
  const double s1 = e.j1.sn, c1 = e.j1.cn, d1 = e.j1.dn;
  const double sc0 = s0 / c0, sc1 = s1 / c1, dc0 = d0 / c0, dc1 = d1 / c1;
  const double w = 1.0 - k2;
  const double km1 = k2 - 1.0;
  const double c02 = c0 * c0;
  GroupPoint q;
  q.x1 = 2.0 * sg * (c0 * d1 - c1 * d0) / (ae * c1 * c0 * w);
  q.x2 = 2.0 / (ae * w) * (d1 * sc1 - d0 * sc0 - e.de) + t;
  q.y = sg / (ae * w) * (2.0 / (ae * w) * ((dc1 + dc0) * e.de + (dc0 * dc1 + k2) * (s0 - s1)) - (dc0 + dc1) * t);
  const double P = 6.0 - 6.0 * k2 + c02 * (1.0 + 7.0 * k2);
  q.z = 2.0 * e.de * P / (3.0 * ae * ae * ae * c02 * km1 * km1 * km1) +
        2.0 * (3.0 * d0 * d0 + c02) / (3.0 * ae * ae * c02 * km1 * km1) * t +
        2.0 / (3.0 * ae * ae * ae * c1 * c1 * c1 * c02 * c0 * km1 * km1 * km1) *
            (c1 * c1 * c1 * d0 * (2.0 + c02 - 2.0 * k2 + 7.0 * c02 * k2) * s0 - 6.0 * c02 * c1 * d0 * km1 * s1 +
             2.0 * c02 * c0 * d1 * km1 * s1 - c0 * c1 * c1 * d1 * P * s1) +
        q.x2 * q.x2 * q.x2 / 6.0;
  return q;
}

GroupPoint exp_c4(const RectifiedCoords& rc, double t) {
  const double a = rc.alpha, ae = rc.ae, sg = rc.sign;
  const double p0 = rc.psi0, pt = p0 + ae * t;
  const double e0 = std::exp(p0), e1 = std::exp(pt), ed = std::exp(pt - p0);
  const double D0 = -1.0 + a * e0 * e0;
  const double D1 = -1.0 + a * e1 * e1;
  GroupPoint q;
  q.x1 = 4.0 * sg * (e1 / D1 - e0 / D0);
  q.x2 = rc.mode == Mode::Verbatim ? t : 4.0 / ae * (1.0 / D0 - 1.0 / D1) + t;
  q.y = -sg * 2.0 * e0 * (-1.0 + a * e1 * e0) * (2.0 + ae * t + ed * (ae * t - 2.0)) / (ae * D0 * D1);
  const double ae0 = a * e0 * e0;
  q.z = q.x2 * q.x2 * q.x2 / 6.0 +
        4.0 / 3.0 *
            (6.0 * e0 * e0 * t / (D0 * D0) + (-1.0 - 9.0 * ae0 * (-2.0 + ae0)) / (a * ae * D0 * D0 * D0) +
             12.0 * (1.0 + ae0 * (-1.0 + 2.0 * ed)) / (a * ae * D0 * D1 * D1) - 8.0 / (a * ae * D1 * D1 * D1) -
             3.0 * (1.0 + ae0 * (6.0 + 4.0 * ed - ae0 * (-1.0 + 4.0 * ed))) / (a * ae * D0 * D0 * D1));
  return q;
}

GroupPoint exp_explicit(Stratum s, const Covector& r, double t, Mode mode) {
  const double th = r.theta, c = r.c;
  switch (s) {
    case Stratum::TL_C00: {
      const double s0 = std::sinh(th), C0 = std::cosh(th);
      return {-C0 * t, s0 * t, 0.0, (2.0 * s0 * s0 + 1.0) * s0 * t * t * t / 6.0};
    }
    case Stratum::TL_C0: {
      const double ct = c * t;
      const double sh = std::sinh(0.5 * ct);
      return {(std::sinh(th - ct) - std::sinh(th)) / c, (std::cosh(th) - std::cosh(th - ct)) / c,
              (std::sinh(ct) - ct) / (2.0 * c * c),
              (4.0 * sh * sh * sh * std::sinh(3.0 * th - 1.5 * ct) - 3.0 * (std::sinh(ct) - ct) * std::sinh(th)) /
                  (6.0 * c * c * c)};
    }
    case Stratum::SL_C5: return {0.0, t, 0.0, t * t * t / 6.0};
    case Stratum::SL_C6: {
      const double ct = c * t;
      const double sh = std::sinh(0.5 * ct);
      return {(std::cosh(ct - th) - std::cosh(th)) / c, (std::sinh(ct - th) + std::sinh(th)) / c,
              (ct - std::sinh(ct)) / (2.0 * c * c),
              (4.0 * std::cosh(1.5 * ct - 3.0 * th) * sh * sh * sh - 3.0 * std::cosh(th) * (ct - std::sinh(ct))) /
                  (6.0 * c * c * c)};
    }
    case Stratum::SL_C7: {
      const double s0 = std::sinh(th), C0 = std::cosh(th);
      const double zc = C0 * (1.0 + 2.0 * s0 * s0) / 6.0;
      return {-s0 * t, C0 * t, 0.0, mode == Mode::Verbatim ? zc * t : zc * t * t * t};
    }
    default: throw StratumError(std::string("exp_map: no explicit form for ") + to_string(s));
  }
}

GroupPoint expand_point(const GroupPoint& q, Family causal, int branch) {
  if (branch >= 0) return q;
  if (causal == Family::Timelike) return {-q.x1, q.x2, -q.y, q.z};
  return {q.x1, -q.x2, -q.y, -q.z};
}

double draw(std::mt19937_64& rng) { return std::uniform_real_distribution<double>(-2.0, 2.0)(rng); }

Covector try_sample(Stratum s, std::mt19937_64& rng) {
  Covector l;
  l.causal = is_timelike(s) ? Family::Timelike : Family::Spacelike;
  l.theta = draw(rng);
  l.c = draw(rng);
  l.alpha = draw(rng);
  const double sa = std::copysign(1.0, draw(rng));
  auto away = [](double v) { return std::abs(v) > kSampleMargin; };
  switch (s) {
    case Stratum::TL_C00:
    case Stratum::SL_C7: l.c = 0.0; l.alpha = 0.0; break;
    case Stratum::TL_C0:
    case Stratum::SL_C6:
      l.alpha = 0.0;
      if (!away(l.c)) l.c = kSampleMargin * 2.0 * sa;
      break;
    case Stratum::TL_Cplus: l.alpha = std::max(std::abs(l.alpha), kSampleMargin); break;
    case Stratum::TL_Cminus: l.alpha = -std::max(std::abs(l.alpha), kSampleMargin); break;
    case Stratum::SL_C1: l.alpha = -std::max(std::abs(l.alpha), kSampleMargin); break;
    case Stratum::SL_C2:
    case Stratum::SL_C3: {
      l.alpha = std::max(std::abs(l.alpha), kSampleMargin);
      const double d = energy(l) + l.alpha;
      const bool want_below = s == Stratum::SL_C2;
      if (std::abs(d) < kSampleMargin || (d < 0.0) != want_below) return Covector{Family::Lightlike};
      break;
    }
    case Stratum::SL_C4:
      l.alpha = std::max(std::abs(l.alpha), kSampleMargin);
      if (!away(l.theta)) l.theta = 2.0 * kSampleMargin * sa;
      l.c = sa * 2.0 * std::sqrt(l.alpha) * std::abs(std::sinh(0.5 * l.theta));
      break;
    case Stratum::SL_C5:
      l.theta = 0.0;
      l.c = 0.0;
      if (!away(l.alpha)) l.alpha = 2.0 * kSampleMargin * sa;
      break;
    default: throw StratumError(std::string("sample_covector: cannot sample ") + to_string(s));
  }
  return l;
}

}  // namespace

double t_supr(const Covector& lambda, Mode mode) {
  const Stratum s = classify(lambda);
  switch (s) {
    case Stratum::TL_Cplus:
    case Stratum::TL_Cminus:
    case Stratum::SL_C2:
    case Stratum::SL_C3: {
      const RectifiedCoords rc = rectify(lambda, mode);
      return (complete_K(rc.k2) - rc.psi0) / rc.ae;
    }
    case Stratum::SL_C4: {
      const RectifiedCoords rc = rectify(lambda, mode);
      const double a = rc.alpha;
      const double t0 = mode == Mode::Verbatim ? -std::log(a) / (2.0 * std::sqrt(a) - rc.phi0)
                                               : (-0.5 * std::log(a) - rc.psi0) / rc.ae;
      return t0 > 0.0 ? t0 : kInf;
    }
    case Stratum::UNRESOLVED_BOUNDARY: throw StratumError("t_supr: covector sits on an unresolved stratum boundary");
    default: return kInf;
  }
}

GroupPoint exp_map(const Covector& lambda, double t, Mode mode) {
  if (lambda.causal == Family::Lightlike) throw StratumError("exp_map: lightlike covector, use exp_lightlike");
  if (!(t >= 0.0)) throw DomainError("exp_map: t must be non-negative");
  const Stratum s = classify(lambda);
  if (s == Stratum::UNRESOLVED_BOUNDARY) throw StratumError("exp_map: covector sits on an unresolved stratum boundary");
  if (t == 0.0) return {};
  const Covector r = reduce_branch(lambda);
  const int b = lambda.branch < 0 ? -1 : 1;
  if (!is_rectifiable(s)) return expand_point(exp_explicit(s, r, t, mode), lambda.causal, b);

  const RectifiedCoords rc = rectify(lambda, mode);
  const double ts = t_supr(lambda, mode);
  if (std::isfinite(ts) && t > ts - kRefuseMargin / rc.ae) {
    throw DomainError("exp_map: t = " + std::to_string(t) + " is at or past t_supr = " + std::to_string(ts));
  }
  GroupPoint q;
  switch (s) {
    case Stratum::TL_Cplus:
    case Stratum::TL_Cminus: q = exp_tl_elliptic(rc, t); break;
    case Stratum::SL_C1: q = exp_c1(rc, t); break;
    case Stratum::SL_C2: q = exp_c2(rc, t); break;
    case Stratum::SL_C3: q = exp_c3(rc, t); break;
    case Stratum::SL_C4: q = exp_c4(rc, t); break;
    default: break;
  }
  return expand_point(q, lambda.causal, b);
}

GroupPoint exp_lightlike(double t, int branch) {
  const double b = branch < 0 ? -1.0 : 1.0;
  return {t, b * t, 0.0, b * t * t * t / 3.0};
}

std::vector<double> time_grid(double t_end, int n, double t_supr_value) {
  if (n < 1) throw DomainError("time_grid: need at least one point");
  if (!(t_end > 0.0)) throw DomainError("time_grid: t_end must be positive");
  std::vector<double> out(static_cast<std::size_t>(n));
  const bool geometric = std::isfinite(t_supr_value) && t_end < t_supr_value;
  const double d0 = t_supr_value;
  const double d1 = t_supr_value - t_end;
  for (int j = 1; j <= n; ++j) {
    const double u = static_cast<double>(j) / n;
    out[j - 1] = geometric ? t_supr_value - std::pow(d0, 1.0 - u) * std::pow(d1, u) : t_end * u;
  }
  out.back() = t_end;
  return out;
}

Covector sample_covector(Stratum s, std::mt19937_64& rng, int branch) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const Covector l = try_sample(s, rng);
    if (l.causal != Family::Lightlike && classify(l) == s) return on_branch(l, branch);
  }
  throw StratumError(std::string("sample_covector: rejection sampling failed for ") + to_string(s));
}

std::vector<Stratum> closed_form_strata() {
  return {Stratum::TL_C00, Stratum::TL_C0, Stratum::TL_Cplus, Stratum::TL_Cminus, Stratum::SL_C1, Stratum::SL_C2,
          Stratum::SL_C3,  Stratum::SL_C4, Stratum::SL_C5,    Stratum::SL_C6,     Stratum::SL_C7};
}

std::vector<ValidationRecord> validate_closed_forms(const SampleSpec& spec) {
  const std::size_t per = static_cast<std::size_t>(std::max(0, spec.samples_per_stratum));
  const std::size_t total = spec.strata.size() * per;
  std::vector<ValidationRecord> out(total);
  static const char* names[4] = {"x1", "x2", "y", "z"};

  auto run_one = [&](std::size_t idx) {
    const Stratum s = spec.strata[idx / per];
    const std::size_t i = idx % per;
    ValidationRecord& rec = out[idx];
    rec.stratum = s;
    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                      static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(seq);
    try {
      // Odd samples exercise branch -1.
      rec.sample = sample_covector(s, rng, i % 2 ? -1 : 1);
      const double ts = t_supr(rec.sample, spec.mode);
      const double T = std::min(spec.t_cap, spec.supr_fraction * ts);
      rec.t_grid = time_grid(T, spec.n_times, ts);
      const ExtremalArc arc = integrate_at(rec.sample, rec.t_grid, spec.rk4_steps);
      rec.h_drift = arc.h_drift;
      rec.e_drift = arc.e_drift;
      rec.h_drift_rel = arc.h_drift_rel;
      rec.e_drift_rel = arc.e_drift_rel;
      for (std::size_t j = 0; j < rec.t_grid.size(); ++j) {
        const Eigen::Vector4d ref = arc.points[j + 1].vec();
        const Eigen::Vector4d got = exp_map(rec.sample, rec.t_grid[j], spec.mode).vec();
        for (int k = 0; k < 4; ++k) {
          const double err = std::abs(got[k] - ref[k]) / std::max(1.0, std::abs(ref[k]));
          rec.max_err[k] = std::max(rec.max_err[k], std::isfinite(err) ? err : kInf);
        }
      }
      for (int k = 0; k < 4; ++k) {
        if (!(rec.max_err[k] < spec.tolerance)) rec.suspect.emplace_back(names[k]);
      }
      rec.pass = rec.suspect.empty();
    } catch (const std::exception& ex) {
      rec.pass = false;
      rec.error = ex.what();
    }
  };

  unsigned nthreads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  nthreads = static_cast<unsigned>(std::min<std::size_t>(nthreads, std::max<std::size_t>(1, total)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) run_one(idx);
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < nthreads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace engel

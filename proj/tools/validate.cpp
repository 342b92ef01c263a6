#include "cli.hpp"

#include "engel/elliptic.hpp"
#include "engel/expmap.hpp"
#include "engel/group.hpp"
#include "engel/maxwell.hpp"
#include "engel/symmetry.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <random>

namespace engel::cli {

namespace {

struct Ctx {
  std::uint64_t seed;
  std::optional<double> tolerance;

  double tol(double nominal) const { return tolerance.value_or(nominal); }
  std::mt19937_64 rng(std::uint64_t salt) const {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(salt)};
    return std::mt19937_64(seq);
  }
};

Check below(std::string name, double value, double tol) { return {std::move(name), value, tol, value < tol}; }

// Positivity-type checks are not tolerance based; value > 0 is the claim.
Check positive(std::string name, double value) { return {std::move(name), value, 0.0, value > 0.0}; }

SuiteResult elliptic_suite(const Ctx& ctx) {
  auto rng = ctx.rng(1);
  std::uniform_real_distribution<double> psi(-20.0, 20.0), k2(-4.0, 0.999);
  double pyth = 0.0, dnrel = 0.0, deriv = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double m = k2(rng), u = psi(rng);
    const JacobiBundle j = jacobi(u, m);
    pyth = std::max(pyth, std::abs(j.sn * j.sn + j.cn * j.cn - 1.0));
    dnrel = std::max(dnrel, std::abs(j.dn * j.dn + m * j.sn * j.sn - 1.0));
    if (i % 10 == 0) {
      const double h = 1e-5;
      const double fd = (eps_incomplete(u + h, m) - eps_incomplete(u - h, m)) / (2.0 * h);
      deriv = std::max(deriv, std::abs(fd - j.dn * j.dn));
    }
  }
  return {"elliptic",
          {below("sn^2+cn^2-1", pyth, ctx.tol(1e-12)), below("dn^2+k^2 sn^2-1", dnrel, ctx.tol(1e-12)),
           below("d eps/dpsi - dn^2", deriv, ctx.tol(1e-6))}};
}

SuiteResult group_suite(const Ctx& ctx) {
  auto rng = ctx.rng(2);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  auto draw = [&] { return GroupPoint{u(rng), u(rng), u(rng), u(rng)}; };
  double assoc = 0.0, inv = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const GroupPoint a = draw(), b = draw(), c = draw();
    const auto l = group_mul(group_mul(a, b), c).vec(), r = group_mul(a, group_mul(b, c)).vec();
    assoc = std::max(assoc, (l - r).norm() / std::max(1.0, l.norm()));
    inv = std::max(inv, group_mul(a, group_inv(a)).vec().norm() / std::max(1.0, a.vec().norm()));
  }
  return {"group", {below("associativity", assoc, ctx.tol(1e-12)), below("inverse", inv, ctx.tol(1e-12))}};
}

std::vector<ValidationRecord> oracle_records(const Ctx& ctx) {
  SampleSpec spec;
  spec.strata = closed_form_strata();
  spec.samples_per_stratum = 10;
  spec.n_times = 32;
  spec.seed = ctx.seed;
  return validate_closed_forms(spec);
}

SuiteResult oracle_suite(const Ctx& ctx, const std::vector<ValidationRecord>& recs) {
  SuiteResult res{"oracle", {}};
  for (Stratum s : closed_form_strata()) {
    double worst = 0.0;
    for (const ValidationRecord& r : recs) {
      if (r.stratum != s) continue;
      if (!r.error.empty()) worst = INFINITY;
      for (double e : r.max_err) worst = std::max(worst, e);
    }
    res.checks.push_back(below(std::string("closed vs rk4 ") + to_string(s), worst, ctx.tol(1e-6)));
  }
  return res;
}

SuiteResult conservation_suite(const Ctx& ctx, const std::vector<ValidationRecord>& recs) {
  double h = 0.0, e = 0.0;
  for (const ValidationRecord& r : recs) {
    h = std::max(h, r.h_drift_rel);
    e = std::max(e, r.e_drift_rel);
  }
  return {"conservation", {below("H drift", h, ctx.tol(1e-8)), below("E drift", e, ctx.tol(1e-8))}};
}

SuiteResult symmetry_suite(const Ctx& ctx) {
  auto rng = ctx.rng(3);
  SuiteResult res{"symmetry", {}};
  for (Stratum s : closed_form_strata()) {
    double worst = 0.0;
    for (int n = 0; n < 10; ++n) {
      Covector l = sample_covector(s, rng);
      if (n % 2) l = on_branch(l, -1);
      const double t = std::min(3.0, 0.8 * t_supr(l));
      for (int i = 0; i <= 3; ++i) worst = std::max(worst, check_commutation(i, l, t));
    }
    res.checks.push_back(below(std::string("commutation ") + to_string(s), worst, ctx.tol(1e-8)));
  }
  return res;
}

// Parameters tied together the way the strata tie them: on C+- with alpha = 1,
// ae^4 = 1/(16 k^2 (1 - k^2)); on C2 with ae = 1, alpha = k^2 and E = k^2 - 2.
FParams stratum_params(FFunc f, double k2) {
  FParams prm;
  prm.k2 = k2;
  if (f == FFunc::fy) prm.ae = std::pow(16.0 * k2 * (1.0 - k2), -0.25);
  if (f == FFunc::f2) {
    prm.alpha = k2;
    prm.energy = k2 - 2.0;
  }
  return prm;
}

SuiteResult positivity_suite(const Ctx&) {
  SuiteResult res{"positivity", {}};
  const std::pair<FFunc, GFunc> pairs[] = {
      {FFunc::fy, GFunc::fy_weight}, {FFunc::f2, GFunc::dn}, {FFunc::f3, GFunc::cndn}, {FFunc::f4, GFunc::cn}};
  for (const auto& [f, g] : pairs) {
    double grid_min = INFINITY;
    bool compare_ok = true;
    for (int kk = 1; kk <= 9; ++kk) {
      const double k = 0.1 * kk;
      const FParams prm = stratum_params(f, k * k);
      const double K = complete_K(prm.k2);
      const int n = 2000;
      for (int i = 1; i <= n; ++i) grid_min = std::min(grid_min, eval_f(f, K * i / (n + 1.0), prm));
      compare_ok = compare_ok && comparison_check(f, g, prm, 0.0, K, n).ok;
    }
    res.checks.push_back(positive(std::string(to_string(f)) + " grid min", grid_min));
    res.checks.push_back({std::string("comparison ") + to_string(f) + "/" + to_string(g), compare_ok ? 1.0 : 0.0,
                          0.0, compare_ok});
  }
  return res;
}

SuiteResult maxwell_suite(const Ctx& ctx) {
  auto rng = ctx.rng(4);
  SuiteResult res{"maxwell", {}};
  for (Stratum s : {Stratum::TL_Cplus, Stratum::TL_Cminus, Stratum::SL_C2, Stratum::SL_C3}) {
    double worst = INFINITY;
    for (int n = 0; n < 10; ++n) worst = std::min(worst, maxwell_times(sample_covector(s, rng)).grid_min);
    res.checks.push_back(positive(std::string("empty ") + to_string(s) + " (min f)", worst));
  }
  double margin = INFINITY;
  for (int n = 0; n < 20; ++n) {
    const MaxwellReport rep = maxwell_times(sample_covector(Stratum::SL_C1, rng));
    margin = std::min(margin, rep.t_max1 ? *rep.t_max1 - *rep.t_max2 : -INFINITY);
  }
  res.checks.push_back(positive("C1 t_max1 - t_max2", margin));
  return res;
}

}  // namespace

bool SuiteResult::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::vector<SuiteResult> run_validation(const std::string& only, std::uint64_t seed,
                                        std::optional<double> tolerance) {
  const Ctx ctx{seed, tolerance};
  auto wanted = [&](const char* name) { return only.empty() || only == name; };
  std::vector<SuiteResult> out;
  if (wanted("elliptic")) out.push_back(elliptic_suite(ctx));
  if (wanted("group")) out.push_back(group_suite(ctx));
  if (wanted("oracle") || wanted("conservation")) {
    const auto recs = oracle_records(ctx);
    if (wanted("oracle")) out.push_back(oracle_suite(ctx, recs));
    if (wanted("conservation")) out.push_back(conservation_suite(ctx, recs));
  }
  if (wanted("symmetry")) out.push_back(symmetry_suite(ctx));
  if (wanted("positivity")) out.push_back(positivity_suite(ctx));
  if (wanted("maxwell")) out.push_back(maxwell_suite(ctx));
  return out;
}

std::string validation_json(const std::vector<SuiteResult>& suites, std::uint64_t seed) {
  nlohmann::json j;
  j["seed"] = seed;
  bool all = true;
  nlohmann::json arr = nlohmann::json::array(), failing = nlohmann::json::array();
  for (const SuiteResult& s : suites) {
    nlohmann::json checks = nlohmann::json::array();
    for (const Check& c : s.checks) {
      checks.push_back({{"name", c.name},
                        {"value", std::isfinite(c.value) ? nlohmann::json(c.value) : nlohmann::json(nullptr)},
                        {"tolerance", c.tolerance},
                        {"pass", c.pass}});
      if (!c.pass) failing.push_back(s.name + ": " + c.name);
    }
    arr.push_back({{"name", s.name}, {"pass", s.pass()}, {"checks", std::move(checks)}});
    all = all && s.pass();
  }
  j["pass"] = all;
  j["suites"] = std::move(arr);
  j["failing"] = std::move(failing);
  return j.dump(2) + "\n";
}

}  // namespace engel::cli

#pragma once

#include "engel/group.hpp"
#include "engel/vertical.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace engel {

/// Explosion time: (K - psi0)/ae on C+-, C2, C3; the pole of the C4 closed
/// form when it lies ahead; +inf elsewhere.
double t_supr(const Covector& lambda, Mode mode = Mode::Corrected);

/// Exp(lambda, t) for a normal (timelike or spacelike) covector.
/// Throws DomainError for t < 0 or t within 1e-6/ae of t_supr, StratumError
/// for lightlike input.
GroupPoint exp_map(const Covector& lambda, double t, Mode mode = Mode::Corrected);

/// (t, b t, 0, b t^3/3).
GroupPoint exp_lightlike(double t, int branch);

/// n points on (0, t_end]; uniform when t_supr is infinite, geometric in the
/// distance to t_supr otherwise so that samples crowd towards the blow-up.
std::vector<double> time_grid(double t_end, int n, double t_supr);

/// Draws (theta, c, alpha) from [-2, 2]^3 and projects or rejects so that the
/// result lies in the requested stratum, clear of the classification bands.
Covector sample_covector(Stratum s, std::mt19937_64& rng, int branch = 1);

struct SampleSpec {
  std::vector<Stratum> strata;
  int samples_per_stratum = 50;
  int n_times = 64;
  double t_cap = 5.0;
  double supr_fraction = 0.9;
  int rk4_steps = 10000;
  double tolerance = 1e-6;
  std::uint64_t seed = 0;
  Mode mode = Mode::Corrected;
  unsigned threads = 0;  ///< 0 picks hardware concurrency
};

/// Coordinate errors are |closed - rk4| / max(1, |rk4|).
struct ValidationRecord {
  Stratum stratum = Stratum::TL_C00;
  Covector sample;
  std::vector<double> t_grid;
  std::array<double, 4> max_err{};
  double h_drift = 0.0;
  double e_drift = 0.0;
  double h_drift_rel = 0.0;
  double e_drift_rel = 0.0;
  bool pass = true;
  std::vector<std::string> suspect;  ///< names of coordinates over tolerance
  std::string error;                 ///< non-empty if evaluation threw
};

std::vector<ValidationRecord> validate_closed_forms(const SampleSpec& spec);

/// All strata that have closed forms.
std::vector<Stratum> closed_form_strata();

}  // namespace engel

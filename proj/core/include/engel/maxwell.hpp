#pragma once

#include "engel/vertical.hpp"

#include <optional>
#include <string>
#include <vector>

namespace engel {

enum class FFunc { fy, f1, f2, f3, f4 };

/// Comparison functions: k^2 (1 - k^2 (1 - cn^4 p)), dn p, cn p dn p, cn p.
enum class GFunc { fy_weight, dn, cndn, cn };

/// "E(p)" in f2: energy times p (selected by the y factorization) or the
/// elliptic integral eps(p).
enum class F2Reading { EnergyTimesP, EllipticEps };

/// f4 as printed is negative on (0, K); Normalized returns its negative so
/// that it is the positive quantity the comparison argument is about.
enum class F4Sign { Normalized, Printed };

struct FParams {
  double k2 = 0.5;
  double ae = 1.0;
  double alpha = 1.0;
  double energy = 0.0;
  F2Reading f2_reading = F2Reading::EnergyTimesP;
  F4Sign f4_sign = F4Sign::Normalized;
};

/// tau = (psi_t + psi_0)/2, p = (psi_t - psi_0)/2 = ae t/2.
struct MidpointCoords {
  double tau = 0.0;
  double p = 0.0;
};

double f_y(double p, double k2, double ae, double alpha);
double f1(double p, double k2, double ae, double alpha);
double f2(double p, double k2, double ae, double energy, F2Reading reading = F2Reading::EnergyTimesP);
double f3(double p, double k2);
double f4(double p, double k2, F4Sign sign = F4Sign::Normalized);

/// Dispatch without domain checks (used by scans and the comparison test).
double eval_f(FFunc f, double p, const FParams& prm);
double eval_g(GFunc g, double p, const FParams& prm);
const char* to_string(FFunc f);
const char* to_string(GFunc g);

struct ComparisonResult {
  bool ok = false;
  std::string failing;  ///< empty when ok
  double g_min = 0.0;
  double ratio_slope_min = 0.0;  ///< min over the grid of (f/g)' by central differences
  double ratio_left = 0.0;       ///< f/g near the left endpoint
  bool has_printed_slope = false;
  bool printed_slope_agrees = false;
};

/// Checks g > 0, (f/g)' >= 0 and f/g -> 0 at p_lo on n interior points.
ComparisonResult comparison_check(FFunc f, GFunc g, const FParams& prm, double p_lo, double p_hi,
                                  int n = 10000);

struct Scan {
  double min = 0.0;
  std::optional<double> first_root;
  double bracket = 0.0;  ///< width of the final bisection bracket
};

/// Grid scan of f on (p_lo, p_hi] at step `step`, with bisection to 1e-12 on
/// the leftmost sign change.
Scan scan_f(FFunc f, const FParams& prm, double p_lo, double p_hi, double step);

/// Roots of f1 on (0, p_max], in increasing order.
std::vector<double> roots_f1(const FParams& prm, double p_max);

MidpointCoords midpoint(const RectifiedCoords& rc, double t);

/// Parameters of the relevant f for a covector in C+-, C1, C2 or C3.
FParams maxwell_params(const RectifiedCoords& rc);

/// x1 and y rebuilt from the factorized displays (angular factor times f).
/// x1 is absent on C+-, where only y is factorized.
struct FactorizedXY {
  std::optional<double> x1;
  double y = 0.0;
  double angular = 0.0;  ///< the tau-dependent factor in y
  double fval = 0.0;     ///< the p-dependent factor in y
};
FactorizedXY factorized_xy(const Covector& lambda, double t);

struct MaxwellReport {
  Stratum stratum = Stratum::TL_Cplus;
  std::string f_name;
  double grid_min = 0.0;
  std::optional<double> first_root;
  std::optional<double> t_max1;
  std::optional<double> t_max2;
  std::optional<bool> max1_empty;
  std::optional<bool> max2_empty;
  double root_bracket = 0.0;
  double cut_bound = 0.0;
  bool no_bound = false;
};

/// Throws StratumError outside C+-, C1, C2, C3.
MaxwellReport maxwell_times(const Covector& lambda);

struct CutBound {
  double value = 0.0;
  bool no_bound = false;
};

/// C1: 4K/ae (the time of the first epsilon^2 Maxwell point); C2, C3: t_supr;
/// +inf with no_bound elsewhere.
CutBound cut_time_bound(const Covector& lambda);

}  // namespace engel

#pragma once

#include "engel/group.hpp"

#include <Eigen/Core>

#include <limits>
#include <string>
#include <vector>

namespace engel {

enum class Family { Timelike, Spacelike, Lightlike };

enum class Stratum {
  TL_C00,
  TL_C0,
  TL_Cplus,
  TL_Cminus,
  SL_C1,
  SL_C2,
  SL_C3,
  SL_C4,
  SL_C5,
  SL_C6,
  SL_C7,
  LIGHT_plus,
  LIGHT_minus,
  UNRESOLVED_BOUNDARY,
};

/// Corrected formulas are the default. Verbatim reproduces the closed forms
/// exactly as originally printed, for auditing against the oracle.
enum class Mode { Corrected, Verbatim };

/// Initial costate in chart coordinates.
///
/// Timelike: h1 = branch*cosh(theta), h2 = sinh(theta).
/// Spacelike: h1 = sinh(theta), h2 = branch*cosh(theta).
/// In both charts h3 = c and h4 = alpha. Lightlike covectors only use branch.
struct Covector {
  Family causal = Family::Timelike;
  double theta = 0.0;
  double c = 0.0;
  double alpha = 0.0;
  int branch = 1;

  Eigen::Vector4d costate() const;
};

struct RectifiedCoords {
  double phi0 = 0.0;
  double energy = 0.0;
  double alpha = 0.0;  ///< alpha of the branch +1 representative
  double k2 = 0.0;
  double ae = 0.0;
  double psi0 = 0.0;
  Stratum stratum = Stratum::TL_Cplus;
  Family causal = Family::Timelike;
  int branch = 1;
  double sign = 1.0;  ///< sgn(theta) on C2 and C4, sgn(c) on C3, else 1
  Mode mode = Mode::Corrected;
};

/// State of the chart form of the Hamiltonian system.
struct ChartState {
  double theta = 0.0;
  double c = 0.0;
  double alpha = 0.0;
  GroupPoint q;
};

/// (x1, x2, y, z, h1, h2, h3, h4).
using CostateState = Eigen::Matrix<double, 8, 1>;

/// Sampled trajectory with conservation diagnostics.
struct ExtremalArc {
  Covector lambda;
  Stratum stratum = Stratum::TL_C00;
  std::vector<double> times;
  std::vector<GroupPoint> points;
  std::vector<double> theta;
  std::vector<double> c;
  double h_drift = 0.0;      ///< max |H - H0|
  double e_drift = 0.0;      ///< max |E - E0|
  double h_drift_rel = 0.0;  ///< same, divided by max(1, h1^2 + h2^2)
  double e_drift_rel = 0.0;  ///< same, divided by max(1, h3^2/2 + |h2 h4|)
  double t_supr = std::numeric_limits<double>::infinity();
};

/// Which right-hand side the RK4 oracle integrates.
enum class OracleForm {
  Costate,  ///< (q, h1..h4); H and E are genuinely integrated quantities
  Chart,    ///< (q, theta, c, alpha) as in full_rhs
};

inline constexpr double kAlphaBand = 1e-12;
inline constexpr double kCBand = 1e-12;
inline constexpr double kEnergyBand = 1e-12;
inline constexpr double kThetaBand = 1e-12;

const char* to_string(Stratum s);
Stratum stratum_from_string(const std::string& name);
bool is_timelike(Stratum s);
/// Strata with Jacobi-function rectifying coordinates (C+-, C1..C4).
bool is_rectifiable(Stratum s);

/// H = (-h1^2 + h2^2)/2. The point q does not enter because h is already
/// expressed in the frame Hamiltonians.
double hamiltonian_H(const GroupPoint& q, const Eigen::Vector4d& h);

/// Chart-form vector field. Throws OverflowError when cosh(theta) overflows.
ChartState full_rhs(const ChartState& s, Family causal, int branch = 1);

/// Costate-form vector field, valid for both causal families.
CostateState costate_rhs(const CostateState& s);

/// E = h3^2/2 - h2*h4, which is c^2/2 - alpha*sinh(theta) in the timelike
/// chart and c^2/2 - alpha*cosh(theta) in the spacelike one (branch +1).
double energy(const Covector& lambda);

/// Representative on branch +1: timelike (theta, -c, alpha), spacelike
/// (theta, -c, -alpha) when branch is -1. Identity otherwise.
Covector reduce_branch(const Covector& lambda);

/// Inverse of reduce_branch: the covector on the given branch whose
/// representative is `reduced`. Lies in the same stratum.
Covector on_branch(const Covector& reduced, int branch);

Stratum classify(const Covector& lambda);

/// Rectifying coordinates for C+-, C1..C4. Throws StratumError elsewhere and
/// InversionError if the phase solve fails.
RectifiedCoords rectify(const Covector& lambda, Mode mode = Mode::Corrected);

/// Covector at phase psi (= ae*phi) in the rectified chart.
Covector unrectify(const RectifiedCoords& r, double psi);

/// Vertical flow by closed form: rectified phase shift on C+-, C1..C4,
/// explicit solutions on the remaining strata.
Covector vertical_flow(const Covector& lambda, double t);

/// Fixed-step RK4 from the origin to time T with n steps; every step is kept.
ExtremalArc integrate(const Covector& lambda, double T, int n, OracleForm form = OracleForm::Costate);

/// Same integrator, with the step sequence arranged so that each requested
/// time is hit exactly. About n steps in total; times must be increasing.
ExtremalArc integrate_at(const Covector& lambda, const std::vector<double>& times, int n,
                         OracleForm form = OracleForm::Costate);

/// RK4 on the lightlike system q' = X1(q) + branch*X2(q).
std::vector<GroupPoint> integrate_lightlike(double T, int n, int branch);

}  // namespace engel

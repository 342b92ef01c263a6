#pragma once

#include "engel/group.hpp"
#include "engel/vertical.hpp"

namespace engel {

/// How spacelike preimage maps treat alpha.
///
/// CurveLevel keeps alpha, which is what the trajectory reflections do and
/// what commutes with Exp. Printed flips alpha for epsilon^1 and epsilon^3
/// as in the original coordinate display; it is kept for comparison only.
/// The timelike maps are the same under both conventions.
enum class SymConvention { CurveLevel, Printed };

struct SymmetricPair {
  Covector lambda;
  double t = 0.0;
};

/// Index 0 is the branch reflection epsilon^0; 1..3 form the Klein group.
/// Time-reversing maps act on the endpoint of the vertical flow.
SymmetricPair apply_preimage(int i, const Covector& lambda, double t,
                             SymConvention conv = SymConvention::CurveLevel);

GroupPoint apply_image(int i, const GroupPoint& q, Family causal);

bool time_reversing(int i, Family causal);

/// |Exp(eps^i(lambda, t)) - eps^i(Exp(lambda, t))| / max(1, |eps^i(Exp)|),
/// Euclidean norms.
double check_commutation(int i, const Covector& lambda, double t,
                         SymConvention conv = SymConvention::CurveLevel);

/// Fixed-point sets of the image maps, with a 1e-10 band.
bool fixed_image(int i, const GroupPoint& q, Family causal);

/// Fixed-point conditions in the preimage, per stratum, with tau computed in
/// rectified coordinates. Throws StratumError for lightlike or unresolved
/// covectors.
bool fixed_preimage(int i, const Covector& lambda, double t);

}  // namespace engel

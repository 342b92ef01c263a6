#pragma once

#include <Eigen/Core>

namespace engel {

/// Point (x1, x2, y, z) of the Engel group.
struct GroupPoint {
  double x1 = 0.0;
  double x2 = 0.0;
  double y = 0.0;
  double z = 0.0;

  Eigen::Vector4d vec() const { return {x1, x2, y, z}; }
  static GroupPoint from(const Eigen::Vector4d& v) { return {v[0], v[1], v[2], v[3]}; }
};

/// Coefficients of a horizontal vector in the frame {X1, X2}.
struct HorizontalVector {
  double u1 = 0.0;
  double u2 = 0.0;
};

enum class CausalClass { Timelike, Spacelike, Lightlike, Zero };

GroupPoint group_mul(const GroupPoint& p, const GroupPoint& q);
GroupPoint group_inv(const GroupPoint& p);

/// Columns are X1(q), X2(q), X3(q), X4(q) in coordinates (x1, x2, y, z).
Eigen::Matrix4d frame_at(const GroupPoint& q);

/// g(v, v) = -u1^2 + u2^2.
double lorentz_norm2(const HorizontalVector& v);

/// Sign test on g(v, v) with a 1e-14 band around the light cone.
/// The zero vector reports Zero; by the metric's convention it also counts
/// as spacelike, see is_spacelike().
CausalClass causal_class(const HorizontalVector& v);
bool is_spacelike(const HorizontalVector& v);

const char* to_string(CausalClass c);

}  // namespace engel

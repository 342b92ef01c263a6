#include "engel/group.hpp"

#include <cmath>

namespace engel {

namespace {
constexpr double kLightBand = 1e-14;
}

GroupPoint group_mul(const GroupPoint& p, const GroupPoint& q) {
  GroupPoint r;
  r.x1 = p.x1 + q.x1;
  r.x2 = p.x2 + q.x2;
  r.y = p.y + q.y + 0.5 * (p.x1 * q.x2 - q.x1 * p.x2);
  r.z = p.z + q.z + 0.5 * p.x2 * q.x2 * (p.x2 + q.x2) + p.x1 * q.y +
        0.5 * p.x1 * q.x2 * (p.x1 + q.x1);
  return r;
}

GroupPoint group_inv(const GroupPoint& p) { return {-p.x1, -p.x2, -p.y, p.x1 * p.y - p.z}; }

Eigen::Matrix4d frame_at(const GroupPoint& q) {
  Eigen::Matrix4d f;
  // clang-format off
  f << 1.0,          0.0,                                 0.0,  0.0,
       0.0,          1.0,                                 0.0,  0.0,
       -0.5 * q.x2,  0.5 * q.x1,                          1.0,  0.0,
       0.0,          0.5 * (q.x1 * q.x1 + q.x2 * q.x2),   q.x1, 1.0;
  // clang-format on
  return f;
}

double lorentz_norm2(const HorizontalVector& v) { return -v.u1 * v.u1 + v.u2 * v.u2; }

CausalClass causal_class(const HorizontalVector& v) {
  if (v.u1 == 0.0 && v.u2 == 0.0) return CausalClass::Zero;
  const double g = lorentz_norm2(v);
  const double scale = std::max(1.0, v.u1 * v.u1 + v.u2 * v.u2);
  if (std::abs(g) <= kLightBand * scale) return CausalClass::Lightlike;
  return g < 0.0 ? CausalClass::Timelike : CausalClass::Spacelike;
}

bool is_spacelike(const HorizontalVector& v) {
  const CausalClass c = causal_class(v);
  return c == CausalClass::Spacelike || c == CausalClass::Zero;
}

const char* to_string(CausalClass c) {
  switch (c) {
    case CausalClass::Timelike: return "timelike";
    case CausalClass::Spacelike: return "spacelike";
    case CausalClass::Lightlike: return "lightlike";
    case CausalClass::Zero: return "zero";
  }
  return "?";
}

}  // namespace engel

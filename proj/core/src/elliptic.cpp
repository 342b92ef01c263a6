#include "engel/elliptic.hpp"

#include "engel/errors.hpp"

#include <boost/math/special_functions/ellint_rd.hpp>
#include <boost/math/special_functions/ellint_rf.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace engel {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLandenCutoff = 1e-14;
constexpr int kMaxLanden = 40;

void require_below_one(double k2, const char* who) {
  if (!(k2 < 1.0)) {
    throw DomainError(std::string(who) + ": k^2 must be < 1, got " + std::to_string(k2));
  }
}

double agm(double a, double b) {
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return 0.5 * (a + b);
}

// F and E on the principal interval |phi| <= pi/2.
double f_principal(double phi, double m) {
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  return s * carlson_rf(c * c, 1.0 - m * s * s, 1.0);
}

double e_principal(double phi, double m) {
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  const double q = 1.0 - m * s * s;
  return s * carlson_rf(c * c, q, 1.0) - (m / 3.0) * s * s * s * carlson_rd(c * c, q, 1.0);
}

// Amplitude on |u| <= K(m), 0 <= m < 1, by the descending Landen sequence.
double amplitude_reduced(double u, double m) {
  if (m == 0.0) return u;
  std::array<double, kMaxLanden + 1> a{};
  std::array<double, kMaxLanden + 1> c{};
  a[0] = 1.0;
  double b = std::sqrt(1.0 - m);
  c[0] = std::sqrt(m);
  int n = 0;
  while (std::abs(c[n]) > kLandenCutoff && n < kMaxLanden) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * u, n);
  for (int j = n; j > 0; --j) {
    phi = 0.5 * (phi + std::asin(c[j] / a[j] * std::sin(phi)));
  }
  return phi;
}

JacobiBundle jacobi_nonnegative(double psi, double m) {
  JacobiBundle out;
  out.psi = psi;
  out.k2 = m;
  const double K = complete_K(m);
  const double n = std::nearbyint(psi / (2.0 * K));
  const double r = psi - 2.0 * n * K;
  const double am_r = amplitude_reduced(r, m);
  const double parity = (static_cast<long long>(n) % 2 == 0) ? 1.0 : -1.0;
  out.sn = parity * std::sin(am_r);
  out.cn = parity * std::cos(am_r);
  out.dn = std::sqrt((1.0 - m) + m * std::cos(am_r) * std::cos(am_r));
  out.am = am_r + n * kPi;
  out.eps = e_principal(am_r, m) + 2.0 * n * complete_E(m);
  return out;
}

}  // namespace

double carlson_rf(double x, double y, double z) { return boost::math::ellint_rf(x, y, z); }

double carlson_rd(double x, double y, double z) { return boost::math::ellint_rd(x, y, z); }

double complete_K(double k2) {
  require_below_one(k2, "complete_K");
  return kPi / (2.0 * agm(1.0, std::sqrt(1.0 - k2)));
}

double complete_E(double k2) {
  if (k2 > 1.0) throw DomainError("complete_E: k^2 must be <= 1");
  if (k2 == 1.0) return 1.0;
  const double kp2 = 1.0 - k2;
  return carlson_rf(0.0, kp2, 1.0) - (k2 / 3.0) * carlson_rd(0.0, kp2, 1.0);
}

double ellip_f(double phi, double k2) {
  require_below_one(k2, "ellip_f");
  const double n = std::nearbyint(phi / kPi);
  const double r = phi - n * kPi;
  const double base = f_principal(r, k2);
  return n == 0.0 ? base : base + 2.0 * n * complete_K(k2);
}

double ellip_e(double phi, double k2) {
  require_below_one(k2, "ellip_e");
  const double n = std::nearbyint(phi / kPi);
  const double r = phi - n * kPi;
  const double base = e_principal(r, k2);
  return n == 0.0 ? base : base + 2.0 * n * complete_E(k2);
}

JacobiBundle negative_modulus_transform(double psi, double k2) {
  if (!(k2 < 0.0)) throw DomainError("negative_modulus_transform: k^2 must be < 0");
  const double mt = -k2 / (1.0 - k2);
  const double scale = std::sqrt(1.0 - k2);
  const JacobiBundle v = jacobi_nonnegative(psi * scale, mt);

  JacobiBundle out;
  out.psi = psi;
  out.k2 = k2;
  out.sn = v.sn / (scale * v.dn);
  out.cn = v.cn / v.dn;
  out.dn = 1.0 / v.dn;
  // Same quadrant as the transformed amplitude, so the unwrap is a small shift.
  const double shift = std::atan2(out.sn, out.cn) - std::atan2(v.sn, v.cn);
  out.am = v.am + std::remainder(shift, 2.0 * kPi);
  out.eps = ellip_e(out.am, k2);
  return out;
}

JacobiBundle jacobi(double psi, double k2) {
  require_below_one(k2, "jacobi");
  if (k2 < 0.0) return negative_modulus_transform(psi, k2);
  return jacobi_nonnegative(psi, k2);
}

double eps_incomplete(double psi, double k2) { return jacobi(psi, k2).eps; }

}  // namespace engel

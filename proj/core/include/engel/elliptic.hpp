#pragma once

// Jacobi elliptic functions and Legendre integrals for a real parameter
// m = k^2 < 1. Negative m is handled by the imaginary-modulus transformation,
// so every entry point takes k^2 rather than k.

namespace engel {

struct JacobiBundle {
  double psi = 0.0;
  double k2 = 0.0;
  double sn = 0.0;
  double cn = 1.0;
  double dn = 1.0;
  double am = 0.0;   ///< amplitude, continuous in psi
  double eps = 0.0;  ///< integral of dn^2 from 0 to psi
};

/// Carlson's symmetric integral R_F(x, y, z).
double carlson_rf(double x, double y, double z);
/// Carlson's symmetric integral R_D(x, y, z).
double carlson_rd(double x, double y, double z);

/// K(m). Throws DomainError for m >= 1.
double complete_K(double k2);
/// E(m). Throws DomainError for m > 1.
double complete_E(double k2);

/// Incomplete integrals F(phi|m), E(phi|m) for any real phi.
double ellip_f(double phi, double k2);
double ellip_e(double phi, double k2);

/// Full bundle at (psi, m), m < 1.
JacobiBundle jacobi(double psi, double k2);

/// Integral of dn^2 over [0, psi].
double eps_incomplete(double psi, double k2);

/// Evaluates the bundle for m < 0 through the real parameter
/// m~ = -m/(1-m) and the scaled argument psi*sqrt(1-m).
/// Throws DomainError for m >= 0.
JacobiBundle negative_modulus_transform(double psi, double k2);

}  // namespace engel

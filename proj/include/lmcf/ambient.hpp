#pragma once

#include <complex>
#include <span>

#include "lmcf/cvector.hpp"

namespace lmcf {

/// Standard Kahler form of C^n: omega(u,v) = sum_j (u_xj v_yj - u_yj v_xj).
/// Bilinear and antisymmetric.
double kahler_form(const CVector& u, const CVector& v);

/// Liouville form lambda = sum_j (x_j dy_j - y_j dx_j) evaluated at p on v.
/// Satisfies d(lambda) = 2 omega and lambda_p(v) = omega(p, v).
double liouville_form(const CVector& p, const CVector& v);

/// Holomorphic volume form Omega = dz_1 ^ ... ^ dz_n applied to a real frame:
/// the complex determinant of the matrix whose column j is frame[j] viewed as
/// a complex n-vector. Requires exactly n vectors of complex dimension n.
std::complex<double> holomorphic_volume(std::span<const CVector> frame);

/// Hyperkahler rotation of C^2:
///   rho(u1 + i v1, u2 + i v2) = (u1 + i u2, v1 - i v2).
/// An involutive real-linear isometry taking holomorphic curves to
/// Lagrangians of the standard omega. Only defined for n = 2.
CVector hyperkahler_rotate(const CVector& p);

}  // namespace lmcf

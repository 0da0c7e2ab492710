#pragma once
// Overflow-safe kernels shared by specfun and densities.
#include "scaled.hpp"

namespace rmlab::detail {

// 1F1(a; b; x) for real x; picks the direct or Kummer-transformed series,
// whichever cancels less, before any multiprecision fallback.
Scaled hyp1f1_real(double a, double b, double x);

// 2F1(a, b; c; x), 0 <= x < 1, Euler form above 1/2. No integer guards.
Scaled hyp2f1_real(double a, double b, double c, double x);

// psi(a, b; x e^{-i pi}), x > 0. b must not be an integer; when it is close to
// one the two-term formula is combined in multiprecision.
ScaledComplex psi_lower_negative_axis(double a, double b, double x);

// log |fhat_alpha(x)|^2 from the Kummer representation.
double log_fhat_sq(double alpha, double x);

} // namespace rmlab::detail

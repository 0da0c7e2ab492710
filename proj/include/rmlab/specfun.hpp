#pragma once
#include <complex>

namespace rmlab {

using ComplexVal = std::complex<double>;

double log_gamma(double x);
double digamma(double x);

// Kummer 1F1(a; b; z). Real z takes the cancellation-safe path (see hyp2f1).
ComplexVal hyp1f1(double a, double b, ComplexVal z);

// Tricomi psi(a, b; z) via the two Kummer solutions; the branch of z^{1-b} is the
// principal one, so pass z = polar(x, -pi) for the lower edge of the negative axis.
ComplexVal tricomi_psi(double a, double b, ComplexVal z);

// Gauss 2F1(a, b; c; x) on [0, 1), Euler-transformed above x = 1/2.
double hyp2f1(double a, double b, double c, double x);

// sqrt(alpha / Gamma(alpha)) * int_0^inf t^{alpha-1} exp(-t^2/2) exp(i x t) dt
// by Gauss-Legendre panels; throws AccuracyError when cancellation exceeds 1e-8 on |f|^2.
ComplexVal fhat_alpha(double alpha, double x);

// Same quantity from its two-term Kummer representation (accurate for all x).
ComplexVal fhat_alpha_series(double alpha, double x);

} // namespace rmlab

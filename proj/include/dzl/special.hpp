#pragma once

#include <complex>

namespace dzl {

/// log Γ(z) for complex z, Lanczos (g = 7, n = 9) with reflection for ℜz < 1/2.
std::complex<double> lgamma_complex(std::complex<double> z);

/// 1/Γ(z), entire; exact zeros at z = 0, −1, −2, …
std::complex<double> rgamma(std::complex<double> z);

/// E₁(x) for x > 0.
double expint_e1(double x);

/// ∫_X^∞ u^{a−1} e^{−u} du for X > 0 (upper incomplete gamma, real a).
double upper_incomplete_gamma(double a, double X);

}  // namespace dzl

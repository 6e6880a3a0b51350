#pragma once

#include <complex>

namespace ffl {

constexpr double kEulerGamma = 0.57721566490153286060651209;

// Principal-branch E_1(z) = int_z^inf e^{-t}/t dt. Power series for small |z| (and
// near the negative real axis), continued fraction otherwise. Throws at z = 0.
std::complex<double> expint_e1(std::complex<double> z);

// Ci(x) = -int_x^inf cos(t)/t dt for x > 0.
double cos_integral(double x);
// Cin(x) = int_0^x (1 - cos t)/t dt = gamma + log x - Ci(x); entire, stable near 0.
double cos_integral_entire(double x);

}  // namespace ffl

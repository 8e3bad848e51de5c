#pragma once

namespace tascap {

// Euler-Mascheroni constant to 20 digits.
inline constexpr double kEulerGamma = 0.57721566490153286061;

// Gamma(0, x) = E1(x) = int_x^inf e^-t / t dt, for x > 0.
// Absolute error <= 1e-13. Power series below 1, modified-Lentz
// continued fraction above.
double upper_incomplete_gamma_zero(double x);

// e^x * Gamma(0, x). Stays in a sane range for all x > 0; this is the
// form the SINR survival function needs so that huge exponents cancel
// exactly instead of overflowing.
double upper_incomplete_gamma_zero_scaled(double x);

// Principal branch of the Lambert W function, w*e^w = x, for x >= -1/e.
// Residual |w e^w - x| <= 1e-13 * max(1, |x|).
double lambert_w0(double x);

}  // namespace tascap

#pragma once

#include <complex>
#include <utility>

#include "hydrosleigh/inertia.hpp"

namespace hydrosleigh {

/// Gamma function on the complex plane (Lanczos approximation, reflection
/// for Re z < 0.5). Relative accuracy better than 1e-13 for |z| <= 20 off
/// the poles. Throws PoleError at nonpositive integers.
std::complex<double> complex_gamma(std::complex<double> z);

/// Euler Beta function B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y).
std::complex<double> complex_beta(std::complex<double> x, std::complex<double> y);

/// Displacement between the centers of the two limit circles by adaptive
/// quadrature of
///   (sigma sqrt(D)/Z) * sech T * cos(2 c1 (arctan e^T - pi/4))
///                     * {cos, sin}(alpha ln cosh T + phi0)
/// over T in [-40, 40] (the integrand is below 1e-17 outside).
/// Requires Z != 0. Absolute accuracy ~1e-9.
std::pair<double, double> center_displacement_quadrature(const SleighCoefficients& c,
                                                         double phi0, int sigma);

/// Squared distance between the limit-circle centers in closed form:
///   (2 pi D / Z^2) (alpha / (c1^2 + alpha^2))
///                  (cosh(alpha pi) - cos(c1 pi)) / sinh(alpha pi).
/// Independent of the energy; always positive. Requires Z != 0.
/// The hyperbolic ratio is evaluated in exponential form for large
/// |alpha pi| to avoid overflow.
double center_distance_sq(const SleighCoefficients& c);

}  // namespace hydrosleigh

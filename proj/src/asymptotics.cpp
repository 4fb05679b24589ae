#include "hydrosleigh/asymptotics.hpp"

#include <array>
#include <cmath>

#include "hydrosleigh/errors.hpp"
#include "hydrosleigh/quadrature.hpp"
#include "hydrosleigh/sleigh2d.hpp"

namespace hydrosleigh {

namespace {

// Lanczos coefficients for g = 607/128, n = 15 (Godfrey's set); relative
// error ~1e-14 on the half-plane Re z >= 0.5 for double precision.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos{
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5};

bool is_nonpositive_integer(std::complex<double> z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

std::complex<double> gamma_positive_half(std::complex<double> z) {
    // Series is written for Gamma(z) with z shifted down by one.
    z -= 1.0;
    std::complex<double> sum = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i)
        sum += kLanczos[i] / (z + static_cast<double>(i));
    const std::complex<double> t = z + kLanczosG + 0.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * sum;
}

}  // namespace

std::complex<double> complex_gamma(std::complex<double> z) {
    if (is_nonpositive_integer(z))
        throw PoleError("gamma pole at z = " + std::to_string(z.real()));
    if (z.real() < 0.5) {
        // Reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z).
        return M_PI / (std::sin(M_PI * z) * gamma_positive_half(1.0 - z));
    }
    return gamma_positive_half(z);
}

std::complex<double> complex_beta(std::complex<double> x, std::complex<double> y) {
    if (is_nonpositive_integer(x) || is_nonpositive_integer(y) || is_nonpositive_integer(x + y))
        throw PoleError("beta pole");
    return complex_gamma(x) * complex_gamma(y) / complex_gamma(x + y);
}

std::pair<double, double> center_displacement_quadrature(const SleighCoefficients& c,
                                                         double phi0, int sigma) {
    if (c.Z == 0.0)
        throw WrongRegimeError("Z = 0: limit motions are straight lines, centers undefined");
    const ClosedForm cf = closed_form(c, 1.0, 1, 0.0);
    const double prefactor = sigma * std::sqrt(c.D) / c.Z;

    const auto envelope = [&](double t) {
        return sech(t) * std::cos(2.0 * cf.c1 * (std::atan(std::exp(t)) - M_PI / 4.0));
    };
    const auto fx = [&](double t) { return envelope(t) * std::cos(cf.alpha * log_cosh(t) + phi0); };
    const auto fy = [&](double t) { return envelope(t) * std::sin(cf.alpha * log_cosh(t) + phi0); };

    constexpr double kTMax = 40.0;
    constexpr double kTol = 1e-10;
    const QuadResult qx = integrate_adaptive(fx, -kTMax, kTMax, kTol);
    const QuadResult qy = integrate_adaptive(fy, -kTMax, kTMax, kTol);
    if (!qx.converged || !qy.converged)
        throw Error("center displacement quadrature did not converge");
    return {prefactor * qx.value, prefactor * qy.value};
}

double center_distance_sq(const SleighCoefficients& c) {
    if (c.Z == 0.0)
        throw WrongRegimeError("Z = 0: limit motions are straight lines, distance undefined");
    const ClosedForm cf = closed_form(c, 1.0, 1, 0.0);
    const double x = cf.alpha * M_PI;
    const double cos_c1pi = std::cos(cf.c1 * M_PI);

    double ratio;  // (cosh x - cos(c1 pi)) / sinh x, odd in x
    const double ax = std::abs(x);
    if (ax > 30.0) {
        const double e1 = std::exp(-ax);
        const double e2 = e1 * e1;
        ratio = std::copysign((1.0 + e2 - 2.0 * cos_c1pi * e1) / (1.0 - e2), x);
    } else {
        ratio = (std::cosh(x) - cos_c1pi) / std::sinh(x);
    }

    return (2.0 * M_PI * c.D / (c.Z * c.Z)) *
           (cf.alpha / (cf.c1 * cf.c1 + cf.alpha * cf.alpha)) * ratio;
}

}  // namespace hydrosleigh

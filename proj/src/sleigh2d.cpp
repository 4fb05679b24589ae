#include "hydrosleigh/sleigh2d.hpp"

#include <algorithm>
#include <cmath>

#include "hydrosleigh/errors.hpp"

namespace hydrosleigh {

namespace {
constexpr double kLn2 = 0.6931471805599453;
}

double log_cosh(double x) {
    const double ax = std::abs(x);
    return ax + std::log1p(std::exp(-2.0 * ax)) - kLn2;
}

double sech(double x) {
    const double ax = std::abs(x);
    const double e = std::exp(-ax);
    return 2.0 * e / (1.0 + e * e);
}

std::pair<double, double> reduced_rhs(const SleighCoefficients& c, const ReducedState& s) {
    const double line = c.L1 * s.omega + c.Z * s.v1;
    return {line * (c.L2 * s.omega - c.M * s.v1) / c.D,
            line * (c.J * s.omega - c.L2 * s.v1) / c.D};
}

double lagrange_multiplier(const InertiaTensor3& tensor, const ReducedState& s) {
    const Mat3 inv = invert3(tensor);
    const std::array<double, 3> mu = tensor * std::array<double, 3>{s.omega, s.v1, 0.0};
    // Coadjoint term with v2 = 0: (-v1 p2, omega p2, -omega p1).
    const std::array<double, 3> ad{-s.v1 * mu[2], s.omega * mu[2], -s.omega * mu[1]};
    const std::array<double, 3> w = inv * ad;
    return -w[2] / inv(2, 2);
}

double energy(const SleighCoefficients& c, const ReducedState& s) {
    return 0.5 * (c.J * s.omega * s.omega + c.M * s.v1 * s.v1 - 2.0 * c.L2 * s.omega * s.v1);
}

ReducedState equilibrium(const SleighCoefficients& c, double s_param) {
    if (c.L1 == 0.0 && c.Z == 0.0)
        throw WrongRegimeError("L1 = Z = 0: every state is an equilibrium, the line is undefined");
    return {-c.Z * s_param, c.L1 * s_param};
}

double stability_eigenvalue(const SleighCoefficients& c, double s_param) {
    if (c.L1 == 0.0 && c.Z == 0.0)
        throw WrongRegimeError("L1 = Z = 0: every state is an equilibrium");
    return -s_param * c.E / c.D;
}

double limit_radius(const SleighCoefficients& c) {
    if (c.Z == 0.0)
        throw WrongRegimeError("Z = 0: limit motions are straight lines, no circular radius");
    return std::abs(c.L1 / c.Z);
}

ClosedForm closed_form(const SleighCoefficients& c, double amplitude, int sigma, double phi0) {
    if (c.E <= 0.0)
        throw WrongRegimeError("E = 0 (L1 = Z = 0): no transition solutions exist");
    if (!(amplitude >= 0.0)) throw InvalidSpecError("closed-form amplitude must be >= 0");
    if (sigma != 1 && sigma != -1) throw InvalidSpecError("sigma must be +1 or -1");

    ClosedForm cf;
    cf.amplitude = amplitude;
    cf.sigma = sigma;
    cf.alpha = -c.D * c.Z / c.E;
    cf.beta = c.D * c.L1 / c.E;
    const double sd = std::sqrt(c.D);
    cf.c1 = sd * (c.Z * c.L2 + c.M * c.L1) / c.E;
    cf.c2 = sd * (c.L1 * c.L2 + c.Z * c.J) / c.E;
    cf.phi0 = phi0;
    return cf;
}

ClosedFormPoint closed_form_eval(const ClosedForm& cf, double t) {
    const double at = cf.amplitude * t;
    const double th = std::tanh(at);
    const double sh = sech(at);
    ClosedFormPoint p;
    p.state.omega = cf.amplitude * (cf.alpha * th + cf.sigma * cf.c1 * sh);
    p.state.v1 = cf.amplitude * (cf.beta * th + cf.sigma * cf.c2 * sh);
    p.phi = closed_form_phi1(cf, t) + closed_form_phi2(cf, t);
    return p;
}

double closed_form_phi1(const ClosedForm& cf, double t) {
    const double at = cf.amplitude * t;
    // atan(e^x) - pi/4 evaluated oddly: atan(e^x) saturates fast, exp may
    // overflow to inf where atan(inf) = pi/2 is still correct.
    return 2.0 * cf.sigma * cf.c1 * (std::atan(std::exp(at)) - M_PI / 4.0);
}

double closed_form_phi2(const ClosedForm& cf, double t) {
    return cf.alpha * log_cosh(cf.amplitude * t) + cf.phi0;
}

double heading_change_z0(const SleighCoefficients& c, int sigma) {
    if (c.Z != 0.0)
        throw WrongRegimeError("Z != 0: limit motions are circles, heading change diverges");
    if (c.L1 == 0.0)
        throw WrongRegimeError("L1 = Z = 0: degenerate regime, no transition");
    return sigma * M_PI * std::sqrt(c.D) * (c.M * c.L1) / c.E;
}

std::pair<double, double> center_point(const SleighCoefficients& c) {
    if (c.Z == 0.0)
        throw WrongRegimeError("Z = 0: limit motions are straight lines, no center point");
    return {0.0, -c.L1 / c.Z};
}

double bracket_factor(const SleighCoefficients& c, const ReducedState& s) {
    return -(c.L1 * s.omega + c.Z * s.v1) / c.D;
}

double separatrix_value(const SleighCoefficients& c, const ReducedState& s) {
    return c.L1 * s.omega + c.Z * s.v1;
}

SleighRegime classify_regime(const SleighCoefficients& c, const ReducedState& initial) {
    if (c.L1 == 0.0 && c.Z == 0.0) return SleighRegime::Degenerate;
    const double line = c.L1 * initial.omega + c.Z * initial.v1;
    const double scale = std::abs(c.L1 * initial.omega) + std::abs(c.Z * initial.v1);
    if (std::abs(line) <= 1e-12 * scale || scale == 0.0) return SleighRegime::Steady;
    return c.Z != 0.0 ? SleighRegime::LimitCircles : SleighRegime::StraightLines;
}

FittedForm fit_closed_form(const SleighCoefficients& c, const ReducedState& s, double phi_at_state) {
    if (c.E <= 0.0)
        throw WrongRegimeError("E = 0 (L1 = Z = 0): no transition solutions exist");

    const double h = energy(c, s);
    const double amplitude = std::sqrt(2.0 * h * c.E) / c.D;
    if (amplitude == 0.0)
        throw WrongRegimeError("state is the rest equilibrium, nothing to fit");

    ClosedForm cf = closed_form(c, amplitude, 1, 0.0);

    // Solve [alpha c1; beta c2] (u, w)^T = (omega, v1)^T / A for
    // u = tanh(A t0) and w = sigma sech(A t0).
    const double det = cf.alpha * cf.c2 - cf.beta * cf.c1;
    const double oh = s.omega / amplitude;
    const double vh = s.v1 / amplitude;
    const double u = (cf.c2 * oh - cf.c1 * vh) / det;
    const double w = (cf.alpha * vh - cf.beta * oh) / det;

    if (std::abs(w) < 1e-9)
        throw WrongRegimeError("state lies on the equilibrium line, no transition branch");

    cf.sigma = w > 0.0 ? 1 : -1;
    const double uc = std::clamp(u, -1.0 + 1e-16, 1.0 - 1e-16);
    const double t_offset = std::atanh(uc) / amplitude;

    cf.phi0 = phi_at_state - (closed_form_phi1(cf, t_offset) + cf.alpha * log_cosh(amplitude * t_offset));
    return {cf, t_offset};
}

}  // namespace hydrosleigh

#pragma once

#include <utility>

#include "hydrosleigh/inertia.hpp"

namespace hydrosleigh {

/// Reduced phase-plane state of the constrained planar body.
struct ReducedState {
    double omega = 0.0;  // [rad/s]
    double v1 = 0.0;     // blade-aligned speed [m/s]

    friend bool operator==(const ReducedState&, const ReducedState&) = default;
};

/// Planar pose: heading and position of the blade contact point.
struct Pose2 {
    double phi = 0.0;  // [rad], unwrapped
    double x = 0.0;    // [m]
    double y = 0.0;    // [m]

    friend bool operator==(const Pose2&, const Pose2&) = default;
};

/// Parameters of the general solution of the reduced system:
///   omega(t) = A (alpha tanh At + sigma c1 sech At)
///   v1(t)    = A (beta  tanh At + sigma c2 sech At)
/// with alpha = -DZ/E, beta = DL1/E, c1 = sqrt(D)(ZL2+ML1)/E,
/// c2 = sqrt(D)(L1L2+ZJ)/E, and energy H = (D^2/E) A^2 / 2.
struct ClosedForm {
    double amplitude = 0.0;  // A >= 0
    int sigma = 1;           // branch, +1 or -1
    double alpha = 0.0;
    double beta = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double phi0 = 0.0;  // heading integration constant
};

struct ClosedFormPoint {
    ReducedState state;
    double phi = 0.0;
};

/// Long-time behavior of a trajectory.
enum class SleighRegime {
    LimitCircles,   // Z != 0: asymptotic circles in opposite senses
    StraightLines,  // Z = 0, L1 != 0: asymptotic straight lines
    Degenerate,     // L1 = Z = 0: every state is an equilibrium
    Steady,         // initial state on the equilibrium line
};

/// Time derivative of (omega, v1):
///   ( (L1 w + Z v)(L2 w - M v)/D, (L1 w + Z v)(J w - L2 v)/D ).
std::pair<double, double> reduced_rhs(const SleighCoefficients& c, const ReducedState& s);

/// Constraint-force multiplier lambda for the momentum-space equations,
/// determined by keeping v2 = 0.
double lagrange_multiplier(const InertiaTensor3& tensor, const ReducedState& s);

/// Reduced energy H = (J w^2 + M v^2 - 2 L2 w v) / 2.
double energy(const SleighCoefficients& c, const ReducedState& s);

/// Point on the equilibrium line: (omega, v1) = (-Z s, L1 s).
/// Throws WrongRegimeError when L1 = Z = 0 (the whole plane is equilibria).
ReducedState equilibrium(const SleighCoefficients& c, double s_param);

/// Nonzero eigenvalue -sE/D of the linearization of reduced_rhs at the
/// equilibrium with parameter s (the other eigenvalue is 0, along the line).
/// Negative for s > 0 (stable), positive for s < 0 (unstable).
double stability_eigenvalue(const SleighCoefficients& c, double s_param);

/// Radius |L1/Z| of the asymptotic circles. Requires Z != 0.
double limit_radius(const SleighCoefficients& c);

/// Build the closed-form solution record for amplitude A and branch sigma.
/// Requires E > 0 (i.e. (L1, Z) != (0, 0)).
ClosedForm closed_form(const SleighCoefficients& c, double amplitude, int sigma, double phi0);

/// Evaluate state and heading at time t. Safe for |At| far beyond overflow
/// of cosh (log cosh and sech are computed in exponential form).
ClosedFormPoint closed_form_eval(const ClosedForm& cf, double t);

/// Odd heading component 2 sigma c1 (arctan e^{At} - pi/4).
double closed_form_phi1(const ClosedForm& cf, double t);

/// Even heading component alpha ln cosh(At) + phi0.
double closed_form_phi2(const ClosedForm& cf, double t);

/// Total heading change between the asymptotic straight lines in the Z = 0
/// regime: sigma pi sqrt(D) M L1 / E. Requires Z = 0 and L1 != 0.
double heading_change_z0(const SleighCoefficients& c, int sigma = 1);

/// Body-frame coordinates (0, -L1/Z) of the material point whose limit
/// positions are the centers of the asymptotic circles. Requires Z != 0.
std::pair<double, double> center_point(const SleighCoefficients& c);

/// Structure factor -(L1 w + Z v)/D of the Poisson bracket; the reduced flow
/// is factor * (dH/dv1, -dH/domega).
double bracket_factor(const SleighCoefficients& c, const ReducedState& s);

/// Signed distance proxy L1 w + Z v1 to the equilibrium line.
double separatrix_value(const SleighCoefficients& c, const ReducedState& s);

SleighRegime classify_regime(const SleighCoefficients& c, const ReducedState& initial);

/// Closed form anchored to a given state: the state sits at canonical time
/// t_offset, so the trajectory through it at local time t is
/// closed_form_eval(form, t + t_offset). phi0 absorbs the shift so the
/// heading matches phi_at_state at t = 0.
struct FittedForm {
    ClosedForm form;
    double t_offset = 0.0;
};

/// Recover (A, sigma, t_offset, phi0) from a state: A from the energy,
/// sigma and the shift from solving the closed form for the state.
/// Throws WrongRegimeError for equilibrium states (no transition branch).
FittedForm fit_closed_form(const SleighCoefficients& c, const ReducedState& s, double phi_at_state);

/// log(cosh(x)) without overflow: |x| + log1p(e^{-2|x|}) - log 2.
double log_cosh(double x);

/// sech(x) without overflow; underflows to 0 for large |x|.
double sech(double x);

}  // namespace hydrosleigh

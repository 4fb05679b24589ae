#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hydrosleigh/eps_core.hpp"
#include "hydrosleigh/inertia.hpp"
#include "hydrosleigh/sleigh2d.hpp"

namespace hydrosleigh {

using OdeRhs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

struct OdeSolution {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
};

/// Classical fixed-step RK4 from t0 to t1 (t1 > t0, dt > 0); the last step is
/// shortened to land exactly on t1. Samples every step boundary including t0.
/// Throws IntegrationAbortError (carrying the last good state) if the
/// derivative turns non-finite.
OdeSolution rk4_integrate(const OdeRhs& rhs, std::vector<double> y0, double t0, double t1,
                          double dt);

/// Reduced-state samples with stored derivatives, shared time grid.
struct ReducedSeries {
    std::vector<double> t;
    std::vector<double> omega;
    std::vector<double> v1;
    std::vector<double> domega;
    std::vector<double> dv1;
};

/// Integrate the pose equations phi' = omega, x' = v1 cos phi, y' = v1 sin phi
/// over the series grid with RK4, interpolating omega and v1 at midpoints by
/// cubic Hermite from the stored derivatives. pose0 applies at the first
/// sample. Throws GridMismatchError if the series arrays disagree.
std::vector<Pose2> reconstruct_2d(const ReducedSeries& series, const Pose2& pose0);

/// Long-time summary attached to every simulation.
struct AsymptoticsReport {
    SleighRegime regime = SleighRegime::Degenerate;
    std::optional<double> limit_radius;
    std::optional<double> alpha, beta, c1, c2;
    std::optional<double> d_formula;     // distance between limit-circle centers
    std::optional<double> d_quadrature;  // same, by quadrature
    std::optional<double> delta_phi;     // heading change, Z = 0 regime
    std::optional<std::pair<double, double>> center_point;
    std::pair<double, double> measure_residuals{0.0, 0.0};
    bool measure_exists = false;
};

AsymptoticsReport asymptotics_report(const SleighCoefficients& c, const ReducedState& initial);

struct TrajectorySample {
    double t = 0.0;
    ReducedState state;
    Pose2 pose;
    double energy = 0.0;
    double constraint_residual = 0.0;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
};

struct SimulationResult {
    Trajectory trajectory;
    AsymptoticsReport report;
    EpsStats eps_stats;
};

/// Simulation window. The initial condition applies at t = 0, so the span
/// must contain 0 (t0 <= 0 <= t1). When t0/t1 are omitted the window is
/// sized from the fitted amplitude so the transition saturates.
struct SimOptions {
    std::optional<double> t0;
    std::optional<double> t1;
    double dt = 1e-3;
};

/// Integrate the reduced equations and reconstruct the planar motion.
/// The constraint residual column is identically zero (v2 is eliminated).
SimulationResult simulate_sleigh(const SleighCoefficients& c, const ReducedState& initial,
                                 const Pose2& pose0, const SimOptions& options = {});
SimulationResult simulate_sleigh(const InertiaTensor3& tensor, const ReducedState& initial,
                                 const Pose2& pose0, const SimOptions& options = {});

/// Same simulation through the momentum-space equations with the v2 = 0
/// constraint enforced by a multiplier; the residual column holds the actual
/// transverse velocity.
SimulationResult simulate_sleigh_momentum(const InertiaTensor3& tensor, const ReducedState& initial,
                                          const Pose2& pose0, const SimOptions& options = {});

/// Trajectory evaluated from the closed-form solution fitted to the initial
/// state, on the same grid as simulate_sleigh. Reduced states and heading are
/// exact; x and y are reconstructed numerically from the exact series.
SimulationResult closed_form_trajectory(const SleighCoefficients& c, const ReducedState& initial,
                                        const Pose2& pose0, const SimOptions& options = {});

/// Algebraic (Kasa) least-squares circle fit.
struct CircleFit {
    double cx = 0.0;
    double cy = 0.0;
    double radius = 0.0;
    double rms = 0.0;
};

CircleFit fit_circle(std::span<const Pose2> points);

}  // namespace hydrosleigh

#include "hydrosleigh/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hydrosleigh/asymptotics.hpp"
#include "hydrosleigh/errors.hpp"

namespace hydrosleigh {

namespace {

bool all_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

/// One RK4 step of size h in place; throws on non-finite derivatives.
void rk4_step(const OdeRhs& rhs, double t, double h, std::vector<double>& y,
              std::vector<std::vector<double>>& work) {
    const std::size_t n = y.size();
    auto& k1 = work[0];
    auto& k2 = work[1];
    auto& k3 = work[2];
    auto& k4 = work[3];
    auto& tmp = work[4];

    const auto check = [&](const std::vector<double>& k) {
        if (!all_finite(k))
            throw IntegrationAbortError("non-finite derivative at t = " + std::to_string(t), t, y);
    };

    rhs(t, y, k1);
    check(k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    rhs(t + 0.5 * h, tmp, k2);
    check(k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    rhs(t + 0.5 * h, tmp, k3);
    check(k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
    rhs(t + h, tmp, k4);
    check(k4);
    for (std::size_t i = 0; i < n; ++i)
        y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

}  // namespace

OdeSolution rk4_integrate(const OdeRhs& rhs, std::vector<double> y0, double t0, double t1,
                          double dt) {
    if (!(dt > 0.0)) throw InvalidSpecError("rk4: dt must be positive");
    if (!(t1 > t0)) throw InvalidSpecError("rk4: t1 must exceed t0");

    const std::size_t n = y0.size();
    std::vector<std::vector<double>> work(5, std::vector<double>(n));

    OdeSolution sol;
    sol.times.push_back(t0);
    sol.states.push_back(y0);

    std::vector<double> y = std::move(y0);
    const double span = t1 - t0;
    const auto n_steps = static_cast<long>(std::ceil(span / dt - 1e-12));

    for (long i = 0; i < n_steps; ++i) {
        const double t = sol.times.back();
        const double t_next = (i + 1 == n_steps) ? t1 : t0 + dt * static_cast<double>(i + 1);
        rk4_step(rhs, t, t_next - t, y, work);
        sol.times.push_back(t_next);
        sol.states.push_back(y);
    }
    return sol;
}

std::vector<Pose2> reconstruct_2d(const ReducedSeries& series, const Pose2& pose0) {
    const std::size_t n = series.t.size();
    if (series.omega.size() != n || series.v1.size() != n || series.domega.size() != n ||
        series.dv1.size() != n)
        throw GridMismatchError("reduced series arrays must share one time grid");
    if (n == 0) throw GridMismatchError("reduced series is empty");
    for (std::size_t i = 1; i < n; ++i)
        if (!(series.t[i] > series.t[i - 1]))
            throw GridMismatchError("time grid must be strictly increasing");

    std::vector<Pose2> poses(n);
    poses[0] = pose0;

    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = series.t[i + 1] - series.t[i];
        const double w0 = series.omega[i], w1 = series.omega[i + 1];
        const double u0 = series.v1[i], u1 = series.v1[i + 1];
        // Cubic Hermite midpoint from endpoint values and derivatives.
        const double wm = 0.5 * (w0 + w1) + 0.125 * h * (series.domega[i] - series.domega[i + 1]);
        const double um = 0.5 * (u0 + u1) + 0.125 * h * (series.dv1[i] - series.dv1[i + 1]);

        const Pose2& p = poses[i];
        const double k1p = w0, k1x = u0 * std::cos(p.phi), k1y = u0 * std::sin(p.phi);
        double phi = p.phi + 0.5 * h * k1p;
        const double k2p = wm, k2x = um * std::cos(phi), k2y = um * std::sin(phi);
        phi = p.phi + 0.5 * h * k2p;
        const double k3p = wm, k3x = um * std::cos(phi), k3y = um * std::sin(phi);
        phi = p.phi + h * k3p;
        const double k4p = w1, k4x = u1 * std::cos(phi), k4y = u1 * std::sin(phi);

        poses[i + 1].phi = p.phi + h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        poses[i + 1].x = p.x + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        poses[i + 1].y = p.y + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    }
    return poses;
}

AsymptoticsReport asymptotics_report(const SleighCoefficients& c, const ReducedState& initial) {
    AsymptoticsReport r;
    r.regime = classify_regime(c, initial);
    r.measure_residuals = measure_residual_2d(c);
    r.measure_exists = measure_exists_2d(c);

    if (c.E > 0.0) {
        const ClosedForm cf = closed_form(c, 1.0, 1, 0.0);
        r.alpha = cf.alpha;
        r.beta = cf.beta;
        r.c1 = cf.c1;
        r.c2 = cf.c2;
    }
    if (c.Z != 0.0) {
        if (r.regime == SleighRegime::Steady && initial.omega != 0.0)
            r.limit_radius = std::abs(initial.v1 / initial.omega);
        else
            r.limit_radius = limit_radius(c);
        r.center_point = center_point(c);
        r.d_formula = std::sqrt(center_distance_sq(c));
        const double phi0 = *r.alpha * std::log(2.0);
        const auto [dx, dy] = center_displacement_quadrature(c, phi0, 1);
        r.d_quadrature = std::hypot(dx, dy);
    } else if (c.L1 != 0.0) {
        const double line = separatrix_value(c, initial);
        const int sigma = line < 0.0 ? -1 : 1;
        r.delta_phi = heading_change_z0(c, sigma);
    }
    return r;
}

namespace {

/// Integrate an autonomous system over [t0, t1] with the initial condition at
/// t = 0, stitching a time-reversed backward leg to a forward leg.
OdeSolution integrate_two_sided(const OdeRhs& rhs, const std::vector<double>& y0, double t0,
                                double t1, double dt) {
    if (!(t0 <= 0.0 && 0.0 <= t1) || !(t1 > t0))
        throw InvalidSpecError("simulation span must contain t = 0 (the initial condition)");

    OdeSolution full;
    if (t0 < 0.0) {
        const OdeRhs reversed = [&rhs](double t, std::span<const double> y,
                                       std::span<double> dy) {
            rhs(-t, y, dy);
            for (double& v : dy) v = -v;
        };
        OdeSolution back = rk4_integrate(reversed, y0, 0.0, -t0, dt);
        for (std::size_t i = back.times.size(); i-- > 0;) {
            if (back.times[i] == 0.0) continue;  // t = 0 comes from the forward leg
            full.times.push_back(-back.times[i]);
            full.states.push_back(std::move(back.states[i]));
        }
    }
    if (t1 > 0.0) {
        OdeSolution fwd = rk4_integrate(rhs, y0, 0.0, t1, dt);
        for (std::size_t i = 0; i < fwd.times.size(); ++i) {
            full.times.push_back(fwd.times[i]);
            full.states.push_back(std::move(fwd.states[i]));
        }
    } else {
        full.times.push_back(0.0);
        full.states.push_back(y0);
    }
    return full;
}

std::pair<double, double> resolve_span(const SleighCoefficients& c, const ReducedState& initial,
                                       const SimOptions& opt) {
    if (opt.t0 && opt.t1) return {*opt.t0, *opt.t1};
    double t_max = 10.0;
    const double h = energy(c, initial);
    if (c.E > 0.0 && h > 0.0) {
        const double amplitude = std::sqrt(2.0 * h * c.E) / c.D;
        t_max = std::clamp(15.0 / (amplitude + 1e-12), 1.0, 1e6);
    }
    return {opt.t0.value_or(-t_max), opt.t1.value_or(t_max)};
}

/// Reconstruct poses over a full (t0 <= 0 <= t1) series anchored at t = 0.
std::vector<Pose2> reconstruct_anchored(const ReducedSeries& series, const Pose2& pose0) {
    const std::size_t n = series.t.size();
    std::size_t zero = 0;
    while (zero < n && series.t[zero] < 0.0) ++zero;
    if (zero >= n || series.t[zero] != 0.0)
        throw GridMismatchError("series must contain the t = 0 sample");

    std::vector<Pose2> poses(n);

    if (zero + 1 <= n) {
        ReducedSeries fwd;
        for (std::size_t i = zero; i < n; ++i) {
            fwd.t.push_back(series.t[i]);
            fwd.omega.push_back(series.omega[i]);
            fwd.v1.push_back(series.v1[i]);
            fwd.domega.push_back(series.domega[i]);
            fwd.dv1.push_back(series.dv1[i]);
        }
        const auto fp = reconstruct_2d(fwd, pose0);
        for (std::size_t i = 0; i < fp.size(); ++i) poses[zero + i] = fp[i];
    }
    if (zero > 0) {
        // Reversed time: tau = -t, with omega and v1 negated; the derivative
        // samples keep their sign under the double flip.
        ReducedSeries back;
        for (std::size_t i = zero + 1; i-- > 0;) {
            back.t.push_back(-series.t[i]);
            back.omega.push_back(-series.omega[i]);
            back.v1.push_back(-series.v1[i]);
            back.domega.push_back(series.domega[i]);
            back.dv1.push_back(series.dv1[i]);
        }
        const auto bp = reconstruct_2d(back, pose0);
        for (std::size_t i = 0; i < bp.size(); ++i) poses[zero - i] = bp[i];
    }
    return poses;
}

}  // namespace

SimulationResult simulate_sleigh(const SleighCoefficients& c, const ReducedState& initial,
                                 const Pose2& pose0, const SimOptions& options) {
    const auto [t0, t1] = resolve_span(c, initial, options);

    const OdeRhs rhs = [&c](double, std::span<const double> y, std::span<double> dy) {
        const auto [dw, dv] = reduced_rhs(c, {y[0], y[1]});
        dy[0] = dw;
        dy[1] = dv;
    };
    const OdeSolution sol =
        integrate_two_sided(rhs, {initial.omega, initial.v1}, t0, t1, options.dt);

    const std::size_t n = sol.times.size();
    ReducedSeries series;
    series.t = sol.times;
    for (std::size_t i = 0; i < n; ++i) {
        const ReducedState s{sol.states[i][0], sol.states[i][1]};
        const auto [dw, dv] = reduced_rhs(c, s);
        series.omega.push_back(s.omega);
        series.v1.push_back(s.v1);
        series.domega.push_back(dw);
        series.dv1.push_back(dv);
    }
    const auto poses = reconstruct_anchored(series, pose0);

    SimulationResult out;
    out.trajectory.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& smp = out.trajectory.samples[i];
        smp.t = series.t[i];
        smp.state = {series.omega[i], series.v1[i]};
        smp.pose = poses[i];
        smp.energy = energy(c, smp.state);
        smp.constraint_residual = 0.0;
    }
    out.report = asymptotics_report(c, initial);
    return out;
}

SimulationResult simulate_sleigh(const InertiaTensor3& tensor, const ReducedState& initial,
                                 const Pose2& pose0, const SimOptions& options) {
    if (!is_symmetric(tensor) || !is_positive_definite(tensor))
        throw DegenerateTensorError("total inertia tensor must be symmetric positive definite");
    return simulate_sleigh(coefficients(tensor), initial, pose0, options);
}

SimulationResult simulate_sleigh_momentum(const InertiaTensor3& tensor, const ReducedState& initial,
                                          const Pose2& pose0, const SimOptions& options) {
    const SleighCoefficients c = coefficients(tensor);
    EpsSystem2 sys(tensor, {Constraint2{{0.0, 0.0, 1.0}, "v2 = 0"}});
    const auto [t0, t1] = resolve_span(c, initial, options);

    EpsStats stats;
    const OdeRhs rhs = [&sys, &stats](double, std::span<const double> y, std::span<double> dy) {
        const Momentum2 dmu = sys.rhs({y[0], y[1], y[2]}, &stats);
        dy[0] = dmu.k;
        dy[1] = dmu.p1;
        dy[2] = dmu.p2;
    };

    const auto mu0 = tensor * std::array<double, 3>{initial.omega, initial.v1, 0.0};
    const OdeSolution sol =
        integrate_two_sided(rhs, {mu0[0], mu0[1], mu0[2]}, t0, t1, options.dt);

    const std::size_t n = sol.times.size();
    ReducedSeries series;
    series.t = sol.times;
    std::vector<double> energies(n), residuals(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Momentum2 mu{sol.states[i][0], sol.states[i][1], sol.states[i][2]};
        const AlgebraElement2 xi = sys.velocity(mu);
        const AlgebraElement2 dxi = sys.velocity(sys.rhs(mu));
        series.omega.push_back(xi.omega);
        series.v1.push_back(xi.v1);
        series.domega.push_back(dxi.omega);
        series.dv1.push_back(dxi.v1);
        energies[i] = sys.energy(mu);
        residuals[i] = xi.v2;
    }
    const auto poses = reconstruct_anchored(series, pose0);

    SimulationResult out;
    out.trajectory.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& smp = out.trajectory.samples[i];
        smp.t = series.t[i];
        smp.state = {series.omega[i], series.v1[i]};
        smp.pose = poses[i];
        smp.energy = energies[i];
        smp.constraint_residual = residuals[i];
    }
    out.report = asymptotics_report(c, initial);
    out.eps_stats = stats;
    return out;
}

SimulationResult closed_form_trajectory(const SleighCoefficients& c, const ReducedState& initial,
                                        const Pose2& pose0, const SimOptions& options) {
    const auto [t0, t1] = resolve_span(c, initial, options);
    if (!(t0 <= 0.0 && 0.0 <= t1) || !(t1 > t0))
        throw InvalidSpecError("simulation span must contain t = 0 (the initial condition)");
    const FittedForm fit = fit_closed_form(c, initial, pose0.phi);

    // Same two-sided grid as the simulator: exact 0, steps of dt outward.
    std::vector<double> times;
    if (t0 < 0.0) {
        const auto nb = static_cast<long>(std::ceil(-t0 / options.dt - 1e-12));
        for (long i = nb; i >= 1; --i)
            times.push_back(i == nb ? t0 : -options.dt * static_cast<double>(i));
    }
    times.push_back(0.0);
    if (t1 > 0.0) {
        const auto nf = static_cast<long>(std::ceil(t1 / options.dt - 1e-12));
        for (long i = 1; i <= nf; ++i)
            times.push_back(i == nf ? t1 : options.dt * static_cast<double>(i));
    }

    ReducedSeries series;
    series.t = times;
    std::vector<double> phis(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        const ClosedFormPoint p = closed_form_eval(fit.form, times[i] + fit.t_offset);
        const auto [dw, dv] = reduced_rhs(c, p.state);
        series.omega.push_back(p.state.omega);
        series.v1.push_back(p.state.v1);
        series.domega.push_back(dw);
        series.dv1.push_back(dv);
        phis[i] = p.phi;
    }
    const auto poses = reconstruct_anchored(series, pose0);

    SimulationResult out;
    out.trajectory.samples.resize(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        auto& smp = out.trajectory.samples[i];
        smp.t = times[i];
        smp.state = {series.omega[i], series.v1[i]};
        smp.pose = poses[i];
        smp.pose.phi = phis[i];
        smp.energy = energy(c, smp.state);
        smp.constraint_residual = 0.0;
    }
    out.report = asymptotics_report(c, initial);
    return out;
}

CircleFit fit_circle(std::span<const Pose2> points) {
    if (points.size() < 3) throw InvalidSpecError("circle fit needs at least 3 points");

    // Kasa fit: minimize sum (x^2 + y^2 + a x + b y + c)^2.
    Mat3 m;
    std::array<double, 3> rhs{};
    for (const Pose2& p : points) {
        const double z = p.x * p.x + p.y * p.y;
        m(0, 0) += p.x * p.x;
        m(0, 1) += p.x * p.y;
        m(0, 2) += p.x;
        m(1, 1) += p.y * p.y;
        m(1, 2) += p.y;
        m(2, 2) += 1.0;
        rhs[0] -= z * p.x;
        rhs[1] -= z * p.y;
        rhs[2] -= z;
    }
    m(1, 0) = m(0, 1);
    m(2, 0) = m(0, 2);
    m(2, 1) = m(1, 2);

    const auto abc = invert3(m) * rhs;
    CircleFit fit;
    fit.cx = -abc[0] / 2.0;
    fit.cy = -abc[1] / 2.0;
    fit.radius = std::sqrt(std::max(fit.cx * fit.cx + fit.cy * fit.cy - abc[2], 0.0));

    double ss = 0.0;
    for (const Pose2& p : points) {
        const double d = std::hypot(p.x - fit.cx, p.y - fit.cy) - fit.radius;
        ss += d * d;
    }
    fit.rms = std::sqrt(ss / static_cast<double>(points.size()));
    return fit;
}

}  // namespace hydrosleigh

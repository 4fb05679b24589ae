#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "hydrosleigh/errors.hpp"
#include "hydrosleigh/sleigh2d.hpp"
#include "test_support.hpp"

using namespace hydrosleigh;
using doctest::Approx;

namespace {

const SleighCoefficients kF1 = coefficients(testing::fixture_f1());
const SleighCoefficients kF2 = coefficients(testing::fixture_f2());

SleighCoefficients vacuum_coeffs(double m, double a, double b, double moment) {
    return coefficients(body_inertia_2d({m, a, b, moment}));
}

}  // namespace

TEST_CASE("reduced_rhs") {
    SUBCASE("equilibrium line maps to zero") {
        for (double s : {-2.0, -0.5, 0.0, 1.0, 3.0}) {
            const ReducedState eq = equilibrium(kF2, s);
            const auto [dw, dv] = reduced_rhs(kF2, eq);
            CHECK(dw == 0.0);
            CHECK(dv == 0.0);
        }
    }
    SUBCASE("fixture F1 spot values") {
        const auto a = reduced_rhs(kF1, {1.0, 1.0});
        CHECK(a.first == Approx(-0.5).epsilon(1e-15));
        CHECK(a.second == Approx(1.0).epsilon(1e-15));
        const auto b = reduced_rhs(kF1, {0.0, 1.0});
        CHECK(b.first == Approx(-0.5).epsilon(1e-15));
        CHECK(b.second == 0.0);
    }
}

TEST_CASE("lagrange_multiplier") {
    SUBCASE("rest state") { CHECK(lagrange_multiplier(testing::fixture_f1(), {0.0, 0.0}) == 0.0); }
    SUBCASE("F1 pure surge") {
        CHECK(lagrange_multiplier(testing::fixture_f1(), {0.0, 1.0}) == Approx(0.0).epsilon(1e-15));
    }
    SUBCASE("keeps v2 stationary along the momentum flow") {
        std::mt19937 rng(41);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        for (int i = 0; i < 100; ++i) {
            const Mat3 t = testing::random_sleigh_tensor(rng);
            const Mat3 inv = invert3(t);
            const ReducedState s{u(rng), u(rng)};
            const double lambda = lagrange_multiplier(t, s);

            const auto mu = t * std::array<double, 3>{s.omega, s.v1, 0.0};
            const std::array<double, 3> mu_dot{-s.v1 * mu[2], s.omega * mu[2],
                                               -s.omega * mu[1] + lambda};
            const auto xi_dot = inv * mu_dot;
            CHECK(std::abs(xi_dot[2]) <= 1e-12 * (1.0 + std::abs(xi_dot[0]) + std::abs(xi_dot[1])));
        }
    }
}

TEST_CASE("energy") {
    CHECK(energy(kF1, {0.0, 0.0}) == 0.0);
    CHECK(energy(kF1, {1.0, 1.0}) == Approx(1.5).epsilon(1e-15));

    SUBCASE("on the equilibrium line the energy is E s^2 / 2") {
        std::mt19937 rng(43);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        for (int i = 0; i < 50; ++i) {
            const SleighCoefficients c = coefficients(testing::random_sleigh_tensor(rng));
            const double s = u(rng);
            const double h = energy(c, equilibrium(c, s));
            CHECK(h == Approx(0.5 * c.E * s * s).epsilon(1e-12));
        }
    }
}

TEST_CASE("equilibrium and stability") {
    CHECK(equilibrium(kF1, 0.0) == ReducedState{0.0, 0.0});
    CHECK(equilibrium(kF1, 1.0) == ReducedState{-1.0, 0.0});
    const ReducedState e2 = equilibrium(kF2, 1.0);
    CHECK(e2.omega == Approx(-4.7123889803846899).epsilon(1e-14));
    CHECK(e2.v1 == Approx(0.5).epsilon(1e-15));

    SleighCoefficients degenerate = kF1;
    degenerate.L1 = degenerate.Z = 0.0;
    CHECK_THROWS_AS(equilibrium(degenerate, 1.0), WrongRegimeError);

    CHECK(stability_eigenvalue(kF1, 0.0) == 0.0);
    // Nonzero eigenvalue of the actual linearization: -sE/D (F1: E = D = 2).
    CHECK(stability_eigenvalue(kF1, 1.0) == Approx(-1.0).epsilon(1e-15));

    SUBCASE("matches a finite-difference Jacobian of reduced_rhs") {
        std::mt19937 rng(47);
        std::uniform_real_distribution<double> su(0.2, 1.5);
        for (int i = 0; i < 25; ++i) {
            const SleighCoefficients c = coefficients(testing::random_sleigh_tensor(rng));
            for (double sign : {1.0, -1.0}) {
                const double s = sign * su(rng);
                const ReducedState eq = equilibrium(c, s);
                const double h = 1e-6 * (1.0 + std::abs(eq.omega) + std::abs(eq.v1));

                // Central-difference Jacobian.
                double jac[2][2];
                for (int col = 0; col < 2; ++col) {
                    ReducedState plus = eq, minus = eq;
                    (col == 0 ? plus.omega : plus.v1) += h;
                    (col == 0 ? minus.omega : minus.v1) -= h;
                    const auto fp = reduced_rhs(c, plus);
                    const auto fm = reduced_rhs(c, minus);
                    jac[0][col] = (fp.first - fm.first) / (2.0 * h);
                    jac[1][col] = (fp.second - fm.second) / (2.0 * h);
                }
                // Rank-1 matrix: eigenvalues are 0 and the trace.
                const double trace = jac[0][0] + jac[1][1];
                const double det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
                const double lambda = stability_eigenvalue(c, s);
                CHECK(trace == Approx(lambda).epsilon(1e-6));
                CHECK(std::abs(det) <= 1e-6 * trace * trace + 1e-9);
                if (s > 0.0) CHECK(lambda < 0.0);
                if (s < 0.0) CHECK(lambda > 0.0);
            }
        }
    }
}

TEST_CASE("limit_radius") {
    SleighCoefficients c = kF1;
    CHECK(limit_radius(c) == 0.0);  // L1 = 0: rotation about the origin
    CHECK(limit_radius(kF2) == Approx(0.10610329539459689).epsilon(1e-14));

    SUBCASE("Z = 0 has no circular limit") {
        CHECK_THROWS_AS(limit_radius(vacuum_coeffs(1.0, 0.5, 0.0, 1.0)), WrongRegimeError);
    }
    SUBCASE("balanced ellipse: r = 2 m a / (rho pi (A^2-B^2) sin 2 theta)") {
        const double m = 1.3, a = 0.4, moment = 0.9;
        const double rho = 1.1, ea = 1.8, eb = 0.7, theta = 0.6;
        const Mat3 t = total_inertia(body_inertia_2d({m, a, 0.0, moment}),
                                     ellipse_added_inertia({rho, ea, eb, theta}));
        const double r = limit_radius(coefficients(t));
        const double formula =
            2.0 * m * a / (rho * M_PI * (ea * ea - eb * eb) * std::sin(2.0 * theta));
        CHECK(r == Approx(formula).epsilon(1e-12));
    }
}

TEST_CASE("closed_form parameters") {
    SUBCASE("fixture F1 with A = 1") {
        const ClosedForm cf = closed_form(kF1, 1.0, 1, 0.0);
        CHECK(cf.alpha == Approx(-1.0).epsilon(1e-15));
        CHECK(cf.beta == 0.0);
        CHECK(cf.c1 == 0.0);
        CHECK(cf.c2 == Approx(std::sqrt(2.0)).epsilon(1e-15));
    }
    SUBCASE("fixture F2") {
        const ClosedForm cf = closed_form(kF2, 1.0, 1, 0.0);
        CHECK(cf.alpha == Approx(-1.838487286985141).epsilon(1e-13));
        CHECK(cf.beta == Approx(0.19506955969019545).epsilon(1e-13));
        CHECK(cf.c1 == Approx(0.27248686809271182).epsilon(1e-13));
        CHECK(cf.c2 == Approx(1.7456791393722711).epsilon(1e-13));
    }
    SUBCASE("energy of the evaluated state is (D^2/E) A^2 / 2") {
        std::mt19937 rng(53);
        std::uniform_real_distribution<double> ua(0.1, 3.0);
        for (int i = 0; i < 50; ++i) {
            const SleighCoefficients c = coefficients(testing::random_sleigh_tensor(rng));
            const double amplitude = ua(rng);
            const ClosedForm cf = closed_form(c, amplitude, i % 2 ? 1 : -1, 0.3);
            const double expected = 0.5 * (c.D * c.D / c.E) * amplitude * amplitude;
            for (double t : {-3.0, 0.0, 0.7, 5.0}) {
                const ClosedFormPoint p = closed_form_eval(cf, t);
                CHECK(energy(c, p.state) == Approx(expected).epsilon(1e-12));
            }
        }
    }
    SUBCASE("degenerate coefficients are rejected") {
        SleighCoefficients degenerate = kF1;
        degenerate.L1 = degenerate.Z = 0.0;
        degenerate.E = 0.0;
        CHECK_THROWS_AS(closed_form(degenerate, 1.0, 1, 0.0), WrongRegimeError);
    }
}

TEST_CASE("closed_form_eval") {
    SUBCASE("t = 0 is the symmetric point") {
        const ClosedForm cf = closed_form(kF2, 1.3, -1, 0.8);
        const ClosedFormPoint p = closed_form_eval(cf, 0.0);
        CHECK(p.state.omega == Approx(1.3 * -1 * cf.c1).epsilon(1e-15));
        CHECK(p.state.v1 == Approx(1.3 * -1 * cf.c2).epsilon(1e-15));
        CHECK(p.phi == Approx(0.8).epsilon(1e-15));
    }
    SUBCASE("limits as t -> +-inf") {
        const ClosedForm cf = closed_form(kF2, 1.0, 1, 0.0);
        for (double t : {1e3, 1e6, 1e12}) {
            const ClosedFormPoint fwd = closed_form_eval(cf, t);
            const ClosedFormPoint bwd = closed_form_eval(cf, -t);
            CHECK(fwd.state.omega == Approx(cf.alpha).epsilon(1e-12));
            CHECK(fwd.state.v1 == Approx(cf.beta).epsilon(1e-12));
            CHECK(bwd.state.omega == Approx(-cf.alpha).epsilon(1e-12));
            CHECK(bwd.state.v1 == Approx(-cf.beta).epsilon(1e-12));
            CHECK(closed_form_phi1(cf, t) == Approx(cf.sigma * cf.c1 * M_PI / 2.0).epsilon(1e-12));
            CHECK(closed_form_phi1(cf, -t) == Approx(-cf.sigma * cf.c1 * M_PI / 2.0).epsilon(1e-12));
        }
    }
    SUBCASE("fixture F1 at t = 1") {
        const ClosedForm cf = closed_form(kF1, 1.0, 1, 0.0);
        const ClosedFormPoint p = closed_form_eval(cf, 1.0);
        CHECK(p.state.omega == Approx(-0.76159415595576489).epsilon(1e-14));
        CHECK(p.state.v1 == Approx(0.916487142969312).epsilon(1e-14));
    }
    SUBCASE("phi1 is odd, phi2 - phi0 is even") {
        const ClosedForm cf = closed_form(kF2, 0.8, 1, 0.4);
        for (double t : {0.1, 0.9, 2.4, 7.7, 30.0}) {
            CHECK(closed_form_phi1(cf, -t) == Approx(-closed_form_phi1(cf, t)).epsilon(1e-13));
            CHECK(closed_form_phi2(cf, -t) - cf.phi0 ==
                  Approx(closed_form_phi2(cf, t) - cf.phi0).epsilon(1e-13));
        }
    }
    SUBCASE("solves the reduced equations (finite differences)") {
        std::mt19937 rng(59);
        for (int i = 0; i < 10; ++i) {
            const SleighCoefficients c =
                i == 0 ? kF1 : (i == 1 ? kF2 : coefficients(testing::random_sleigh_tensor(rng)));
            const ClosedForm cf = closed_form(c, 1.0, i % 2 ? 1 : -1, 0.0);
            const double h = 1e-5;
            for (int k = -10; k <= 10; ++k) {
                const double t = static_cast<double>(k);
                const ClosedFormPoint p = closed_form_eval(cf, t);
                const ClosedFormPoint pp = closed_form_eval(cf, t + h);
                const ClosedFormPoint pm = closed_form_eval(cf, t - h);
                const auto [dw, dv] = reduced_rhs(c, p.state);
                CHECK((pp.state.omega - pm.state.omega) / (2.0 * h) == Approx(dw).epsilon(1e-9));
                CHECK((pp.state.v1 - pm.state.v1) / (2.0 * h) == Approx(dv).epsilon(1e-9));
                // The heading derivative is omega itself.
                CHECK((pp.phi - pm.phi) / (2.0 * h) == Approx(p.state.omega).epsilon(1e-8));
            }
        }
    }
    SUBCASE("separatrix side never changes along a branch") {
        const ClosedForm cf = closed_form(kF2, 1.0, -1, 0.0);
        for (double t = -20.0; t <= 20.0; t += 0.25) {
            const ClosedFormPoint p = closed_form_eval(cf, t);
            CHECK(separatrix_value(kF2, p.state) < 0.0);
        }
    }
    SUBCASE("forward limit is the s > 0 equilibrium, backward the s < 0 one") {
        std::mt19937 rng(131);
        for (int i = 0; i < 30; ++i) {
            const SleighCoefficients c = coefficients(testing::random_sleigh_tensor(rng, false));
            const ClosedForm cf = closed_form(c, 1.0, i % 2 ? 1 : -1, 0.0);
            const auto s_of = [&](const ReducedState& s) {
                return (c.L1 * s.v1 - c.Z * s.omega) / (c.L1 * c.L1 + c.Z * c.Z);
            };
            CHECK(s_of(closed_form_eval(cf, 1e6).state) > 0.0);
            CHECK(s_of(closed_form_eval(cf, -1e6).state) < 0.0);
        }
    }
}

TEST_CASE("heading_change_z0") {
    SUBCASE("vacuum values") {
        CHECK(std::abs(heading_change_z0(vacuum_coeffs(1.0, 1.0, 0.0, 1.0))) ==
              Approx(M_PI * std::sqrt(2.0)).epsilon(1e-14));
        CHECK(std::abs(heading_change_z0(vacuum_coeffs(1.0, 2.0, 0.0, 1.0))) ==
              Approx(M_PI * std::sqrt(5.0) / 2.0).epsilon(1e-14));
    }
    SUBCASE("independent of the lateral offset b") {
        const double reference = heading_change_z0(vacuum_coeffs(1.0, 1.0, 0.0, 1.0));
        for (double b : {0.5, 2.0}) {
            CHECK(heading_change_z0(vacuum_coeffs(1.0, 1.0, b, 1.0)) ==
                  Approx(reference).epsilon(1e-12));
        }
    }
    SUBCASE("wrong regime") {
        CHECK_THROWS_AS(heading_change_z0(kF2), WrongRegimeError);
        CHECK_THROWS_AS(heading_change_z0(vacuum_coeffs(1.0, 0.0, 0.0, 1.0)), WrongRegimeError);
    }
}

TEST_CASE("center_point") {
    CHECK(center_point(kF1) == std::pair{0.0, 0.0});
    const auto c2 = center_point(kF2);
    CHECK(c2.first == 0.0);
    CHECK(c2.second == Approx(-0.10610329539459689).epsilon(1e-14));
    CHECK_THROWS_AS(center_point(vacuum_coeffs(1.0, 1.0, 0.0, 1.0)), WrongRegimeError);
}

TEST_CASE("bracket_factor") {
    CHECK(bracket_factor(kF2, equilibrium(kF2, 0.7)) == 0.0);
    CHECK(bracket_factor(kF1, {1.0, 1.0}) == Approx(-0.5).epsilon(1e-15));

    SUBCASE("reduced flow is the bracket applied to the energy") {
        std::mt19937 rng(61);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        for (int i = 0; i < 100; ++i) {
            const SleighCoefficients c = coefficients(testing::random_sleigh_tensor(rng));
            const ReducedState s{u(rng), u(rng)};
            const double factor = bracket_factor(c, s);
            const double dh_domega = c.J * s.omega - c.L2 * s.v1;
            const double dh_dv1 = c.M * s.v1 - c.L2 * s.omega;
            const auto [dw, dv] = reduced_rhs(c, s);
            CHECK(factor * dh_dv1 == Approx(dw).epsilon(1e-12));
            CHECK(-factor * dh_domega == Approx(dv).epsilon(1e-12));
        }
    }
}

TEST_CASE("degenerate L1 = Z = 0 tensors freeze the reduced flow") {
    Mat3 t;
    t(0, 0) = 2.0;
    t(0, 1) = t(1, 0) = -0.4;
    t(1, 1) = 1.5;
    t(2, 2) = 3.0;
    const SleighCoefficients c = coefficients(t);
    REQUIRE(c.L1 == 0.0);
    REQUIRE(c.Z == 0.0);
    CHECK(classify_regime(c, {1.0, -2.0}) == SleighRegime::Degenerate);

    std::mt19937 rng(67);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 100; ++i) {
        const auto [dw, dv] = reduced_rhs(c, {u(rng), u(rng)});
        CHECK(dw == 0.0);
        CHECK(dv == 0.0);
    }
}

TEST_CASE("regime classification") {
    CHECK(classify_regime(kF2, {1.0, 1.0}) == SleighRegime::LimitCircles);
    CHECK(classify_regime(kF2, equilibrium(kF2, 0.6)) == SleighRegime::Steady);
    CHECK(classify_regime(kF2, {0.0, 0.0}) == SleighRegime::Steady);
    const SleighCoefficients vac = vacuum_coeffs(1.0, 0.7, 0.2, 1.0);
    CHECK(classify_regime(vac, {1.0, 1.0}) == SleighRegime::StraightLines);
    CHECK(classify_regime(vac, {0.0, 1.0}) == SleighRegime::Steady);
}

TEST_CASE("fit_closed_form recovers branch, amplitude, and shift") {
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> ut(-2.0, 2.0);
    std::uniform_real_distribution<double> ua(0.3, 2.5);
    for (int i = 0; i < 50; ++i) {
        const SleighCoefficients c = coefficients(testing::random_sleigh_tensor(rng));
        const double amplitude = ua(rng);
        const int sigma = i % 2 ? 1 : -1;
        const ClosedForm truth = closed_form(c, amplitude, sigma, 0.9);
        const double t_star = ut(rng);
        const ClosedFormPoint at_star = closed_form_eval(truth, t_star);

        const FittedForm fit = fit_closed_form(c, at_star.state, at_star.phi);
        CHECK(fit.form.amplitude == Approx(amplitude).epsilon(1e-10));
        CHECK(fit.form.sigma == sigma);
        CHECK(fit.t_offset == Approx(t_star).epsilon(1e-8));

        for (double dt : {-1.5, -0.3, 0.0, 0.4, 2.2}) {
            const ClosedFormPoint a = closed_form_eval(truth, t_star + dt);
            const ClosedFormPoint b = closed_form_eval(fit.form, dt + fit.t_offset);
            CHECK(b.state.omega == Approx(a.state.omega).epsilon(1e-9));
            CHECK(b.state.v1 == Approx(a.state.v1).epsilon(1e-9));
            CHECK(b.phi == Approx(a.phi).epsilon(1e-9));
        }
    }
    SUBCASE("equilibrium states cannot be fitted") {
        CHECK_THROWS_AS(fit_closed_form(kF2, equilibrium(kF2, 1.0), 0.0), WrongRegimeError);
        CHECK_THROWS_AS(fit_closed_form(kF2, {0.0, 0.0}, 0.0), WrongRegimeError);
    }
}

TEST_CASE("overflow-safe helpers") {
    CHECK(log_cosh(0.0) == 0.0);
    CHECK(log_cosh(1.0) == Approx(std::log(std::cosh(1.0))).epsilon(1e-15));
    CHECK(log_cosh(800.0) == Approx(800.0 - std::log(2.0)).epsilon(1e-15));
    CHECK(log_cosh(-800.0) == Approx(800.0 - std::log(2.0)).epsilon(1e-15));
    CHECK(sech(0.0) == 1.0);
    CHECK(sech(3.0) == Approx(1.0 / std::cosh(3.0)).epsilon(1e-15));
    CHECK(sech(1000.0) == 0.0);
}

#include "hydrosleigh/eps_core.hpp"

#include <cmath>

#include "hydrosleigh/errors.hpp"

namespace hydrosleigh {

namespace {

constexpr double kProjectTol = 1e-9;

std::array<double, 6> to_array(const Momentum3& mu) {
    return {mu.k.x, mu.k.y, mu.k.z, mu.p.x, mu.p.y, mu.p.z};
}

double norm6(const std::array<double, 6>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

/// Solve a small dense symmetric system in place (partial pivoting).
std::vector<double> solve_small(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    double scale = 0.0;
    for (const auto& row : a)
        for (double v : row) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) throw ConstraintDegeneracyError("constraint Gram matrix is zero");

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-12 * scale)
            throw ConstraintDegeneracyError("constraint covectors are linearly dependent");
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
        x[i] = s / a[i][i];
    }
    return x;
}

}  // namespace

EpsSystem3::EpsSystem3(InertiaTensor6 inertia, std::vector<Constraint3> constraints)
    : inertia_(inertia), constraints_(std::move(constraints)) {
    validate_inertia6(inertia_);
    if (constraints_.size() > 5)
        throw InvalidConstraintError("at most dim - 1 = 5 constraints on se(3)");
    const auto chol = cholesky6(inertia_);
    chol_ = *chol;

    for (const auto& c : constraints_) {
        if (norm(c.nu.k) == 0.0 && norm(c.nu.p) == 0.0)
            throw InvalidConstraintError("constraint covector must be nonzero: " + c.label);
        const auto x = cholesky6_solve(chol_, to_array(c.nu));
        inv_nu_.push_back({{x[0], x[1], x[2]}, {x[3], x[4], x[5]}});
    }
    const std::size_t n = constraints_.size();
    gram_.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) gram_[i][j] = pairing3(constraints_[i].nu, inv_nu_[j]);
    if (n > 0) solve_small(gram_, std::vector<double>(n, 0.0));  // independence check
}

AlgebraElement3 EpsSystem3::velocity(const Momentum3& mu) const {
    const auto x = cholesky6_solve(chol_, to_array(mu));
    return {{x[0], x[1], x[2]}, {x[3], x[4], x[5]}};
}

double EpsSystem3::energy(const Momentum3& mu) const { return 0.5 * pairing3(mu, velocity(mu)); }

double EpsSystem3::constraint_residual(const Momentum3& mu, std::size_t i) const {
    return pairing3(constraints_[i].nu, velocity(mu));
}

Momentum3 EpsSystem3::project(const Momentum3& mu) const {
    const std::size_t n = constraints_.size();
    if (n == 0) return mu;
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = constraint_residual(mu, i);
    const auto c = solve_small(gram_, r);
    Momentum3 out = mu;
    for (std::size_t i = 0; i < n; ++i) out = out - c[i] * constraints_[i].nu;
    return out;
}

Momentum3 EpsSystem3::rhs(const Momentum3& mu_in, EpsStats* stats) const {
    const std::size_t n = constraints_.size();
    Momentum3 mu = mu_in;

    if (n > 0) {
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            worst = std::max(worst, std::abs(constraint_residual(mu, i)));
        if (worst > kProjectTol) {
            mu = project(mu);
            if (stats) {
                ++stats->projections;
                stats->max_residual = std::max(stats->max_residual, worst);
            }
        }
    }

    const AlgebraElement3 xi = velocity(mu);
    const Momentum3 base = coadjoint3(xi, mu);
    if (n == 0) return base;

    const AlgebraElement3 inv_base = velocity(base);
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = -pairing3(constraints_[i].nu, inv_base);
    const auto lambda = solve_small(gram_, b);

    Momentum3 out = base;
    for (std::size_t i = 0; i < n; ++i) out = out + lambda[i] * constraints_[i].nu;
    return out;
}

EpsSystem2::EpsSystem2(InertiaTensor3 inertia, std::vector<Constraint2> constraints)
    : inertia_(inertia), constraints_(std::move(constraints)) {
    if (!is_symmetric(inertia_) || !is_positive_definite(inertia_))
        throw DegenerateTensorError("inertia tensor must be symmetric positive definite");
    inverse_ = invert3(inertia_);
    if (constraints_.size() > 2)
        throw InvalidConstraintError("at most dim - 1 = 2 constraints on se(2)");

    for (const auto& c : constraints_) {
        if (c.nu.k == 0.0 && c.nu.p1 == 0.0 && c.nu.p2 == 0.0)
            throw InvalidConstraintError("constraint covector must be nonzero: " + c.label);
        const auto x = inverse_ * std::array<double, 3>{c.nu.k, c.nu.p1, c.nu.p2};
        inv_nu_.push_back({x[0], x[1], x[2]});
    }
    const std::size_t n = constraints_.size();
    gram_.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) gram_[i][j] = pairing2(constraints_[i].nu, inv_nu_[j]);
    if (n > 0) solve_small(gram_, std::vector<double>(n, 0.0));
}

AlgebraElement2 EpsSystem2::velocity(const Momentum2& mu) const {
    const auto x = inverse_ * std::array<double, 3>{mu.k, mu.p1, mu.p2};
    return {x[0], x[1], x[2]};
}

double EpsSystem2::energy(const Momentum2& mu) const { return 0.5 * pairing2(mu, velocity(mu)); }

double EpsSystem2::constraint_residual(const Momentum2& mu, std::size_t i) const {
    return pairing2(constraints_[i].nu, velocity(mu));
}

Momentum2 EpsSystem2::project(const Momentum2& mu) const {
    const std::size_t n = constraints_.size();
    if (n == 0) return mu;
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = constraint_residual(mu, i);
    const auto c = solve_small(gram_, r);
    Momentum2 out = mu;
    for (std::size_t i = 0; i < n; ++i) out = out - c[i] * constraints_[i].nu;
    return out;
}

Momentum2 EpsSystem2::rhs(const Momentum2& mu_in, EpsStats* stats) const {
    const std::size_t n = constraints_.size();
    Momentum2 mu = mu_in;

    if (n > 0) {
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            worst = std::max(worst, std::abs(constraint_residual(mu, i)));
        if (worst > kProjectTol) {
            mu = project(mu);
            if (stats) {
                ++stats->projections;
                stats->max_residual = std::max(stats->max_residual, worst);
            }
        }
    }

    const AlgebraElement2 xi = velocity(mu);
    const Momentum2 base = coadjoint2(xi, mu);
    if (n == 0) return base;

    const AlgebraElement2 inv_base = velocity(base);
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = -pairing2(constraints_[i].nu, inv_base);
    const auto lambda = solve_small(gram_, b);

    Momentum2 out = base;
    for (std::size_t i = 0; i < n; ++i) out = out + lambda[i] * constraints_[i].nu;
    return out;
}

MeasureResidual3 measure_residual_3d(const InertiaTensor6& inertia, const Vec3& a, const Vec3& F) {
    if (norm(a) == 0.0 && norm(F) == 0.0)
        throw InvalidConstraintError("measure criterion needs a nonzero constraint (a, F)");
    validate_inertia6(inertia);
    const auto chol = *cholesky6(inertia);

    const std::array<double, 6> nu{a.x, a.y, a.z, F.x, F.y, F.z};
    const auto uw = cholesky6_solve(chol, nu);
    const Vec3 u{uw[0], uw[1], uw[2]};
    const Vec3 w{uw[3], uw[4], uw[5]};

    const Vec3 top = cross(a, u) + cross(F, w);
    const Vec3 bot = cross(F, u);
    const std::array<double, 6> pre{top.x, top.y, top.z, bot.x, bot.y, bot.z};

    double dot_nn = 0.0, dot_pn = 0.0;
    for (int i = 0; i < 6; ++i) {
        dot_nn += nu[static_cast<std::size_t>(i)] * nu[static_cast<std::size_t>(i)];
        dot_pn += pre[static_cast<std::size_t>(i)] * nu[static_cast<std::size_t>(i)];
    }

    MeasureResidual3 out;
    out.c = dot_pn / dot_nn;
    for (std::size_t i = 0; i < 6; ++i) out.residual[i] = pre[i] - out.c * nu[i];
    out.norm = norm6(out.residual);
    out.exists = out.norm <= 1e-10 * norm6(nu) * norm6(uw);
    return out;
}

std::pair<double, double> measure_residual_2d(const SleighCoefficients& c) {
    return {c.M * c.L1 + c.Z * c.L2, c.L1 * c.L2 + c.J * c.Z};
}

bool measure_exists_2d(const SleighCoefficients& c) {
    const auto [r1, r2] = measure_residual_2d(c);
    const double s1 = std::abs(c.M * c.L1) + std::abs(c.Z * c.L2);
    const double s2 = std::abs(c.L1 * c.L2) + std::abs(c.J * c.Z);
    return std::abs(r1) <= 1e-12 * s1 && std::abs(r2) <= 1e-12 * s2;
}

}  // namespace hydrosleigh

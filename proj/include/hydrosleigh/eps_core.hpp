#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hydrosleigh/inertia.hpp"
#include "hydrosleigh/lie_se.hpp"

namespace hydrosleigh {

/// Counters for off-surface states encountered by the right-hand side.
struct EpsStats {
    long projections = 0;
    double max_residual = 0.0;
};

struct Constraint3 {
    Momentum3 nu;
    std::string label;
};

struct Constraint2 {
    Momentum2 nu;
    std::string label;
};

/// Left-invariant system on se(3)* with linear velocity constraints
/// <nu_i, I^{-1} mu> = 0. The momentum equations are
///   mu_dot = ad*_{I^{-1} mu} mu + sum_i lambda_i nu_i,
/// with the multipliers solved from G lambda = -b,
/// G_ij = <nu_i, I^{-1} nu_j>, b_i = <nu_i, I^{-1} ad*_{I^{-1} mu} mu>,
/// so that every constraint residual has zero time derivative.
class EpsSystem3 {
public:
    EpsSystem3(InertiaTensor6 inertia, std::vector<Constraint3> constraints);

    const InertiaTensor6& inertia() const { return inertia_; }
    const std::vector<Constraint3>& constraints() const { return constraints_; }

    AlgebraElement3 velocity(const Momentum3& mu) const;
    double energy(const Momentum3& mu) const;
    double constraint_residual(const Momentum3& mu, std::size_t i) const;

    /// Pull a momentum back onto the constraint surface (adjusted along the
    /// constraint covectors in the kinetic-energy metric).
    Momentum3 project(const Momentum3& mu) const;

    Momentum3 rhs(const Momentum3& mu, EpsStats* stats = nullptr) const;

private:
    InertiaTensor6 inertia_;
    Mat6 chol_;
    std::vector<Constraint3> constraints_;
    std::vector<AlgebraElement3> inv_nu_;      // I^{-1} nu_i
    std::vector<std::vector<double>> gram_;    // G_ij
};

/// Planar counterpart on se(2)*.
class EpsSystem2 {
public:
    EpsSystem2(InertiaTensor3 inertia, std::vector<Constraint2> constraints);

    const InertiaTensor3& inertia() const { return inertia_; }
    const std::vector<Constraint2>& constraints() const { return constraints_; }

    AlgebraElement2 velocity(const Momentum2& mu) const;
    double energy(const Momentum2& mu) const;
    double constraint_residual(const Momentum2& mu, std::size_t i) const;
    Momentum2 project(const Momentum2& mu) const;
    Momentum2 rhs(const Momentum2& mu, EpsStats* stats = nullptr) const;

private:
    InertiaTensor3 inertia_;
    Mat3 inverse_;
    std::vector<Constraint2> constraints_;
    std::vector<AlgebraElement2> inv_nu_;
    std::vector<std::vector<double>> gram_;
};

/// Invariant-measure test for one constraint a.omega + F.V = 0 on se(3):
/// with (U, W) = I^{-1}(a, F), the residual is
///   (a x U + F x W, F x U) - c* (a, F),
/// minimized over the scalar c*. A smooth invariant measure exists iff the
/// residual vanishes.
struct MeasureResidual3 {
    std::array<double, 6> residual{};
    double c = 0.0;
    double norm = 0.0;
    bool exists = false;
};

MeasureResidual3 measure_residual_3d(const InertiaTensor6& inertia, const Vec3& a, const Vec3& F);

/// Planar criterion: the pair (M L1 + Z L2, L1 L2 + J Z), which vanishes iff
/// L1 = Z = 0.
std::pair<double, double> measure_residual_2d(const SleighCoefficients& c);

bool measure_exists_2d(const SleighCoefficients& c);

}  // namespace hydrosleigh

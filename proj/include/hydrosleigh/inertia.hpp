#pragma once

#include "hydrosleigh/linalg.hpp"

namespace hydrosleigh {

/// Planar rigid body: mass, center-of-mass offset (a, b) in the body frame
/// centered at the blade contact point, and moment of inertia about the
/// center of mass.
struct BodySpec2 {
    double mass = 1.0;    // [kg]
    double a = 0.0;       // [m]
    double b = 0.0;       // [m]
    double moment = 1.0;  // [kg m^2]

    friend bool operator==(const BodySpec2&, const BodySpec2&) = default;
};

/// Elliptical hull in a planar fluid: density, semi-axes A >= B > 0, blade
/// angle theta (counter-clockwise from the major axis).
struct EllipseSpec {
    double rho = 0.0;         // fluid density [kg/m^2]
    double semi_major = 1.0;  // [m]
    double semi_minor = 1.0;  // [m]
    double theta = 0.0;       // [rad]

    friend bool operator==(const EllipseSpec&, const EllipseSpec&) = default;
};

/// 3x3 inertia tensor on se(2): [[J, -L2, L1], [-L2, M, Z], [L1, Z, N]].
/// Body and added tensors may be semidefinite; totals must be positive
/// definite.
using InertiaTensor3 = Mat3;

/// 6x6 inertia tensor on se(3).
using InertiaTensor6 = Mat6;

/// The scalar components of a total 2-D tensor plus the derived quantities
/// D = MJ - L2^2 and E = JZ^2 + 2 L1 L2 Z + M L1^2 that govern the reduced
/// sleigh dynamics. D > 0 always; E > 0 whenever (L1, Z) != (0, 0).
struct SleighCoefficients {
    double J = 0.0;
    double L1 = 0.0;
    double L2 = 0.0;
    double M = 0.0;
    double N = 0.0;
    double Z = 0.0;
    double D = 0.0;
    double E = 0.0;

    friend bool operator==(const SleighCoefficients&, const SleighCoefficients&) = default;
};

/// Rigid-body tensor for a planar body, frame at the blade contact point:
/// [[I + m(a^2+b^2), -mb, ma], [-mb, m, 0], [ma, 0, m]].
/// Throws InvalidSpecError for nonpositive mass or moment.
InertiaTensor3 body_inertia_2d(const BodySpec2& spec);

/// Added-inertia tensor of a centered ellipse with the blade at angle theta:
/// rho*pi * [[(A^2-B^2)^2/4, 0, 0],
///           [0, B^2 cos^2 t + A^2 sin^2 t, (A^2-B^2)/2 sin 2t],
///           [0, (A^2-B^2)/2 sin 2t,        A^2 cos^2 t + B^2 sin^2 t]].
/// Positive semidefinite (zero for a circle's rotational entry, or rho = 0).
InertiaTensor3 ellipse_added_inertia(const EllipseSpec& spec);

/// Entrywise sum, validated symmetric positive definite.
/// Throws DegenerateTensorError if the sum is not positive definite.
InertiaTensor3 total_inertia(const InertiaTensor3& body, const InertiaTensor3& added);

/// Read off J = I11, L2 = -I12, L1 = I13, M = I22, Z = I23, N = I33 and
/// compute D, E.
SleighCoefficients coefficients(const InertiaTensor3& tensor);

/// Explicit inverse via the adjugate:
/// (1/det) [[MN-Z^2, ZL1+NL2, -ZL2-ML1],
///          [ZL1+NL2, JN-L1^2, -L1L2-JZ],
///          [-ZL2-ML1, -L1L2-JZ, JM-L2^2]].
/// Throws SingularTensorError when det < 1e-14 * ||tensor||_F^3.
Mat3 invert3(const InertiaTensor3& tensor);

/// Assemble [[rot, coupling], [coupling^T, trans]].
InertiaTensor6 inertia6_from_blocks(const Mat3& rot, const Mat3& coupling, const Mat3& trans);

/// Throws DegenerateTensorError unless symmetric positive definite.
void validate_inertia6(const InertiaTensor6& tensor);

}  // namespace hydrosleigh

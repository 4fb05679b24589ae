#include "hydrosleigh/inertia.hpp"

#include <cmath>
#include <string>

#include "hydrosleigh/errors.hpp"

namespace hydrosleigh {

InertiaTensor3 body_inertia_2d(const BodySpec2& spec) {
    if (!(spec.mass > 0.0) || !std::isfinite(spec.mass))
        throw InvalidSpecError("body mass must be positive, got " + std::to_string(spec.mass));
    if (!(spec.moment > 0.0) || !std::isfinite(spec.moment))
        throw InvalidSpecError("body moment must be positive, got " + std::to_string(spec.moment));
    if (!std::isfinite(spec.a) || !std::isfinite(spec.b))
        throw InvalidSpecError("body center-of-mass offset must be finite");

    const double m = spec.mass;
    Mat3 t;
    t(0, 0) = spec.moment + m * (spec.a * spec.a + spec.b * spec.b);
    t(0, 1) = t(1, 0) = -m * spec.b;
    t(0, 2) = t(2, 0) = m * spec.a;
    t(1, 1) = m;
    t(1, 2) = t(2, 1) = 0.0;
    t(2, 2) = m;
    return t;
}

InertiaTensor3 ellipse_added_inertia(const EllipseSpec& spec) {
    if (!(spec.rho >= 0.0) || !std::isfinite(spec.rho))
        throw InvalidSpecError("fluid density must be nonnegative");
    if (!(spec.semi_minor > 0.0) || !(spec.semi_major >= spec.semi_minor))
        throw InvalidSpecError("ellipse semi-axes must satisfy A >= B > 0");
    if (!std::isfinite(spec.theta)) throw InvalidSpecError("ellipse angle must be finite");

    const double a2 = spec.semi_major * spec.semi_major;
    const double b2 = spec.semi_minor * spec.semi_minor;
    const double c = std::cos(spec.theta);
    const double s = std::sin(spec.theta);
    const double rp = spec.rho * M_PI;

    Mat3 t;
    t(0, 0) = rp * (a2 - b2) * (a2 - b2) / 4.0;
    t(1, 1) = rp * (b2 * c * c + a2 * s * s);
    t(2, 2) = rp * (a2 * c * c + b2 * s * s);
    t(1, 2) = t(2, 1) = rp * (a2 - b2) / 2.0 * std::sin(2.0 * spec.theta);
    return t;
}

InertiaTensor3 total_inertia(const InertiaTensor3& body, const InertiaTensor3& added) {
    if (!is_symmetric(body) || !is_symmetric(added))
        throw DegenerateTensorError("inertia tensors must be symmetric");
    const Mat3 t = body + added;
    if (!is_positive_definite(t))
        throw DegenerateTensorError("total inertia tensor is not positive definite");
    return t;
}

SleighCoefficients coefficients(const InertiaTensor3& tensor) {
    SleighCoefficients c;
    c.J = tensor(0, 0);
    c.L2 = -tensor(0, 1);
    c.L1 = tensor(0, 2);
    c.M = tensor(1, 1);
    c.Z = tensor(1, 2);
    c.N = tensor(2, 2);
    c.D = c.M * c.J - c.L2 * c.L2;
    c.E = c.J * c.Z * c.Z + 2.0 * c.L1 * c.L2 * c.Z + c.M * c.L1 * c.L1;
    return c;
}

Mat3 invert3(const InertiaTensor3& tensor) {
    const double det = det3(tensor);
    const double nrm = frobenius_norm(tensor);
    if (!(det > 1e-14 * nrm * nrm * nrm))
        throw SingularTensorError("tensor is numerically singular (det = " + std::to_string(det) + ")");

    const SleighCoefficients c = coefficients(tensor);
    Mat3 inv;
    inv(0, 0) = c.M * c.N - c.Z * c.Z;
    inv(0, 1) = inv(1, 0) = c.Z * c.L1 + c.N * c.L2;
    inv(0, 2) = inv(2, 0) = -c.Z * c.L2 - c.M * c.L1;
    inv(1, 1) = c.J * c.N - c.L1 * c.L1;
    inv(1, 2) = inv(2, 1) = -c.L1 * c.L2 - c.J * c.Z;
    inv(2, 2) = c.J * c.M - c.L2 * c.L2;
    for (double& v : inv.m) v /= det;
    return inv;
}

InertiaTensor6 inertia6_from_blocks(const Mat3& rot, const Mat3& coupling, const Mat3& trans) {
    Mat6 t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            t(i, j) = rot(i, j);
            t(i, j + 3) = coupling(i, j);
            t(i + 3, j) = coupling(j, i);
            t(i + 3, j + 3) = trans(i, j);
        }
    return t;
}

void validate_inertia6(const InertiaTensor6& tensor) {
    if (!is_symmetric(tensor))
        throw DegenerateTensorError("6x6 inertia tensor must be symmetric");
    if (!cholesky6(tensor))
        throw DegenerateTensorError("6x6 inertia tensor is not positive definite");
}

}  // namespace hydrosleigh

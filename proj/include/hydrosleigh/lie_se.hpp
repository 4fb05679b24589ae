#pragma once

#include <cmath>

namespace hydrosleigh {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend constexpr Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
    friend constexpr Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
    friend constexpr bool operator==(Vec3, Vec3) = default;
};

constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

/// Velocity pair (omega, V) on se(3), body frame.
struct AlgebraElement3 {
    Vec3 omega;  // angular velocity [rad/s]
    Vec3 v;      // linear velocity [m/s]
};

/// Momentum pair (k, p) on se(3)*: impulsive pair and impulsive force.
struct Momentum3 {
    Vec3 k;
    Vec3 p;

    friend constexpr Momentum3 operator+(Momentum3 a, Momentum3 b) { return {a.k + b.k, a.p + b.p}; }
    friend constexpr Momentum3 operator-(Momentum3 a, Momentum3 b) { return {a.k - b.k, a.p - b.p}; }
    friend constexpr Momentum3 operator*(double s, Momentum3 a) { return {s * a.k, s * a.p}; }
};

/// Velocity (omega, v1, v2) on se(2).
struct AlgebraElement2 {
    double omega = 0.0;
    double v1 = 0.0;
    double v2 = 0.0;
};

/// Momentum (k, p1, p2) on se(2)*.
struct Momentum2 {
    double k = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;

    friend constexpr Momentum2 operator+(Momentum2 a, Momentum2 b) { return {a.k + b.k, a.p1 + b.p1, a.p2 + b.p2}; }
    friend constexpr Momentum2 operator-(Momentum2 a, Momentum2 b) { return {a.k - b.k, a.p1 - b.p1, a.p2 - b.p2}; }
    friend constexpr Momentum2 operator*(double s, Momentum2 a) { return {s * a.k, s * a.p1, s * a.p2}; }
};

/// Duality pairing <mu, xi> = k.omega + p.V.
constexpr double pairing3(const Momentum3& mu, const AlgebraElement3& xi) {
    return dot(mu.k, xi.omega) + dot(mu.p, xi.v);
}

constexpr double pairing2(const Momentum2& mu, const AlgebraElement2& xi) {
    return mu.k * xi.omega + mu.p1 * xi.v1 + mu.p2 * xi.v2;
}

/// Coadjoint action ad*_xi mu on se(3)*: (k x omega + p x V, p x omega).
/// This is the right-hand side of the Kirchhoff equations when xi = I^{-1} mu.
constexpr Momentum3 coadjoint3(const AlgebraElement3& xi, const Momentum3& mu) {
    return {cross(mu.k, xi.omega) + cross(mu.p, xi.v), cross(mu.p, xi.omega)};
}

/// Coadjoint action on se(2)*: (v2 p1 - v1 p2, omega p2, -omega p1).
constexpr Momentum2 coadjoint2(const AlgebraElement2& xi, const Momentum2& mu) {
    return {xi.v2 * mu.p1 - xi.v1 * mu.p2, xi.omega * mu.p2, -xi.omega * mu.p1};
}

}  // namespace hydrosleigh

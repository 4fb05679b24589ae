#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>

namespace hydrosleigh {

/// Dense 3x3 matrix, row-major.
struct Mat3 {
    std::array<double, 9> m{};

    double& operator()(int i, int j) { return m[static_cast<std::size_t>(3 * i + j)]; }
    double operator()(int i, int j) const { return m[static_cast<std::size_t>(3 * i + j)]; }

    static Mat3 identity() {
        Mat3 r;
        r(0, 0) = r(1, 1) = r(2, 2) = 1.0;
        return r;
    }

    friend Mat3 operator+(const Mat3& a, const Mat3& b) {
        Mat3 r;
        for (std::size_t i = 0; i < 9; ++i) r.m[i] = a.m[i] + b.m[i];
        return r;
    }

    friend Mat3 operator*(const Mat3& a, const Mat3& b) {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
                r(i, j) = s;
            }
        return r;
    }

    friend std::array<double, 3> operator*(const Mat3& a, const std::array<double, 3>& v) {
        std::array<double, 3> r{};
        for (int i = 0; i < 3; ++i)
            r[static_cast<std::size_t>(i)] = a(i, 0) * v[0] + a(i, 1) * v[1] + a(i, 2) * v[2];
        return r;
    }

    friend bool operator==(const Mat3&, const Mat3&) = default;
};

inline double det3(const Mat3& a) {
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
           a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

inline double max_abs(const Mat3& a) {
    double r = 0.0;
    for (double v : a.m) r = std::max(r, std::abs(v));
    return r;
}

inline double frobenius_norm(const Mat3& a) {
    double s = 0.0;
    for (double v : a.m) s += v * v;
    return std::sqrt(s);
}

inline bool is_symmetric(const Mat3& a, double rel_tol = 1e-12) {
    const double scale = std::max(max_abs(a), 1.0);
    return std::abs(a(0, 1) - a(1, 0)) <= rel_tol * scale &&
           std::abs(a(0, 2) - a(2, 0)) <= rel_tol * scale &&
           std::abs(a(1, 2) - a(2, 1)) <= rel_tol * scale;
}

/// Leading-principal-minor test; exact for 3x3.
inline bool is_positive_definite(const Mat3& a, double rel_tol = 1e-12) {
    const double scale = std::max(max_abs(a), 1.0);
    const double m1 = a(0, 0);
    const double m2 = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    const double m3 = det3(a);
    return m1 > rel_tol * scale && m2 > rel_tol * scale * scale &&
           m3 > rel_tol * scale * scale * scale;
}

/// Dense 6x6 matrix, row-major.
struct Mat6 {
    std::array<double, 36> m{};

    double& operator()(int i, int j) { return m[static_cast<std::size_t>(6 * i + j)]; }
    double operator()(int i, int j) const { return m[static_cast<std::size_t>(6 * i + j)]; }

    static Mat6 identity() {
        Mat6 r;
        for (int i = 0; i < 6; ++i) r(i, i) = 1.0;
        return r;
    }

    friend std::array<double, 6> operator*(const Mat6& a, const std::array<double, 6>& v) {
        std::array<double, 6> r{};
        for (int i = 0; i < 6; ++i) {
            double s = 0.0;
            for (int j = 0; j < 6; ++j) s += a(i, j) * v[static_cast<std::size_t>(j)];
            r[static_cast<std::size_t>(i)] = s;
        }
        return r;
    }

    friend bool operator==(const Mat6&, const Mat6&) = default;
};

inline double max_abs(const Mat6& a) {
    double r = 0.0;
    for (double v : a.m) r = std::max(r, std::abs(v));
    return r;
}

inline bool is_symmetric(const Mat6& a, double rel_tol = 1e-12) {
    const double scale = std::max(max_abs(a), 1.0);
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            if (std::abs(a(i, j) - a(j, i)) > rel_tol * scale) return false;
    return true;
}

/// Cholesky factor L (lower triangular, A = L L^T), or nullopt if A is not
/// positive definite.
inline std::optional<Mat6> cholesky6(const Mat6& a) {
    Mat6 l;
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = a(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            if (i == j) {
                if (s <= 0.0) return std::nullopt;
                l(i, i) = std::sqrt(s);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    return l;
}

/// Solve A x = b given the Cholesky factor of A.
inline std::array<double, 6> cholesky6_solve(const Mat6& l, const std::array<double, 6>& b) {
    std::array<double, 6> y{};
    for (int i = 0; i < 6; ++i) {
        double s = b[static_cast<std::size_t>(i)];
        for (int k = 0; k < i; ++k) s -= l(i, k) * y[static_cast<std::size_t>(k)];
        y[static_cast<std::size_t>(i)] = s / l(i, i);
    }
    std::array<double, 6> x{};
    for (int i = 5; i >= 0; --i) {
        double s = y[static_cast<std::size_t>(i)];
        for (int k = i + 1; k < 6; ++k) s -= l(k, i) * x[static_cast<std::size_t>(k)];
        x[static_cast<std::size_t>(i)] = s / l(i, i);
    }
    return x;
}

}  // namespace hydrosleigh

#pragma once

#include <array>
#include <cmath>
#include <utility>
#include <vector>

namespace hydrosleigh {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
    bool converged = false;
};

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1] (positive half).
inline constexpr std::array<double, 8> kKronrodNodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd Kronrod nodes (indices 1, 3, 5, 7).
inline constexpr std::array<double, 4> kGaussWeights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
std::pair<double, double> gk15(F& f, double a, double b, int& evals) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double f0 = f(mid);
    double k15 = kKronrodWeights[7] * f0;
    double g7 = kGaussWeights[3] * f0;
    ++evals;

    for (int i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[static_cast<std::size_t>(i)];
        const double fs = f(mid + dx) + f(mid - dx);
        evals += 2;
        k15 += kKronrodWeights[static_cast<std::size_t>(i)] * fs;
        if (i % 2 == 1) g7 += kGaussWeights[static_cast<std::size_t>(i / 2)] * fs;
    }
    k15 *= half;
    g7 *= half;

    const double diff = std::abs(k15 - g7);
    const double err = std::min(diff, std::pow(200.0 * diff, 1.5));
    return {k15, err};
}

}  // namespace detail

/// Adaptive bisection with the 7-15 Gauss-Kronrod pair, absolute tolerance.
template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b, double abs_tol, int max_intervals = 10000) {
    struct Interval {
        double a, b, value, error;
    };

    QuadResult out;
    auto [v0, e0] = detail::gk15(f, a, b, out.evaluations);

    std::vector<Interval> stack{{a, b, v0, e0}};
    double total_value = 0.0;
    double total_error = 0.0;
    int used = 1;

    while (!stack.empty()) {
        const Interval iv = stack.back();
        stack.pop_back();

        const double local_tol = abs_tol * (iv.b - iv.a) / (b - a);
        if (iv.error <= local_tol || used >= max_intervals) {
            total_value += iv.value;
            total_error += iv.error;
            continue;
        }

        const double mid = 0.5 * (iv.a + iv.b);
        auto [vl, el] = detail::gk15(f, iv.a, mid, out.evaluations);
        auto [vr, er] = detail::gk15(f, mid, iv.b, out.evaluations);
        stack.push_back({iv.a, mid, vl, el});
        stack.push_back({mid, iv.b, vr, er});
        ++used;
    }

    out.value = total_value;
    out.error_estimate = total_error;
    out.converged = total_error <= abs_tol;
    return out;
}

}  // namespace hydrosleigh

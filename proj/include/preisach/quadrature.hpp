#pragma once

#include "preisach/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace preisach::quad {

inline constexpr int kOrder = 16;

struct Rule {
    std::array<double, kOrder> nodes{};
    std::array<double, kOrder> weights{};
};

// Gauss-Legendre nodes on [-1, 1] by Newton iteration on P_n.
inline Rule make_gauss_legendre() {
    Rule rule;
    constexpr int n = kOrder;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

inline const Rule& gauss_legendre() {
    static const Rule rule = make_gauss_legendre();
    return rule;
}

/// Fixed 16-point Gauss-Legendre estimate of the integral of f over [a, b].
template <typename F>
double fixed(F&& f, double a, double b) {
    const Rule& rule = gauss_legendre();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < kOrder; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

struct Options {
    double tol = 1e-10;
    /// Maximum bisection depth below the top-level interval.
    int max_depth = 12;
};

namespace detail {

template <typename F>
double adaptive(F& f, double a, double b, double whole, double tol, int depth, int max_depth, double& worst) {
    const double mid = 0.5 * (a + b);
    const double left = fixed(f, a, mid);
    const double right = fixed(f, mid, b);
    const double refined = left + right;
    const double err = std::abs(refined - whole);
    if (err <= tol * std::max(1.0, std::abs(refined))) return refined;
    if (depth >= max_depth) {
        worst = std::max(worst, err);
        return refined;
    }
    // floor keeps the target above rounding noise deep in the recursion
    const double sub_tol = std::max(0.5 * tol, 1e-14);
    return adaptive(f, a, mid, left, sub_tol, depth + 1, max_depth, worst) +
           adaptive(f, mid, b, right, sub_tol, depth + 1, max_depth, worst);
}

} // namespace detail

/// Integral of f over [a, b]: a 16-point estimate compared with its
/// two-half refinement, bisecting where they disagree. Throws NumericalError
/// with the largest unresolved discrepancy if the depth limit is reached.
template <typename F>
double integrate(F&& f, double a, double b, Options opt = {}) {
    if (a == b) return 0.0;
    if (b < a) return -integrate(f, b, a, opt);
    double worst = 0.0;
    const double whole = fixed(f, a, b);
    const double value = detail::adaptive(f, a, b, whole, opt.tol, 0, opt.max_depth, worst);
    if (worst > 0.0) {
        throw NumericalError("quadrature did not converge on [" + std::to_string(a) + ", " + std::to_string(b) +
                                 "], achieved error " + std::to_string(worst),
                             worst);
    }
    return value;
}

} // namespace preisach::quad

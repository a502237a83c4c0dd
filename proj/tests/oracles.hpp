#pragma once

// Test-only reference computations, kept off the library's evaluation path.

#include "preisach/density.hpp"
#include "preisach/quadrature.hpp"
#include "preisach/signals.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracle {

/// Play output at node n straight from the recursion, restarted per call.
inline double play_at(const std::vector<double>& q, std::size_t n, double r) {
    double xi = std::max(q[0] - r, std::min(0.0, q[0] + r));
    for (std::size_t i = 1; i <= n; ++i) xi = std::max(q[i] - r, std::min(xi, q[i] + r));
    return xi;
}

/// Continuous operator int_0^R g(u, r, play_r[q](t_n)) dr by adaptive
/// quadrature over r, split at every node j*R/k_split so the integrand is
/// smooth on each piece.
inline double continuous_preisach(const preisach::DensityModel& model, std::span<const double> u,
                                  const std::vector<double>& q, std::size_t n, double R) {
    double amp = 0.0;
    for (std::size_t i = 0; i <= n; ++i) amp = std::max(amp, std::abs(q[i]));
    const double top = std::min(R, amp);
    if (top <= 0.0) return 0.0;
    // play_r[q] is piecewise linear in r with kinks at |q_i - q_j| / 2 type
    // values; fine uniform splitting keeps the quadrature honest.
    const int pieces = 256;
    double total = 0.0;
    for (int p = 0; p < pieces; ++p) {
        const double a = top * p / pieces;
        const double b = top * (p + 1) / pieces;
        total += preisach::quad::integrate(
            [&](double r) {
                const double xi = play_at(q, n, r);
                return xi == 0.0 ? 0.0 : preisach::primitive_g(model, u, r, xi);
            },
            a, b, {1e-12, 16});
    }
    return total;
}

} // namespace oracle

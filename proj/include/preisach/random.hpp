#pragma once

// Seeded generators for randomized suites: piecewise-constant signals with
// N uniform in [n_min, n_max] steps at uniformly drawn jump times on [0, T]
// and values uniform in [-amplitude, amplitude].

#include "preisach/signals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace preisach::gen {

using Rng = std::mt19937_64;

inline std::vector<double> random_division(Rng& rng, std::size_t N, double T = 1.0) {
    std::uniform_real_distribution<double> ut(0.0, T);
    std::vector<double> d{0.0, T};
    while (d.size() < N + 1) {
        const double t = ut(rng);
        if (t <= 0.0 || t >= T) continue;
        auto it = std::lower_bound(d.begin(), d.end(), t);
        if (*it == t) continue;
        d.insert(it, t);
    }
    return d;
}

inline std::size_t random_steps(Rng& rng, std::size_t n_min = 10, std::size_t n_max = 100) {
    return std::uniform_int_distribution<std::size_t>(n_min, n_max)(rng);
}

inline StepSignal random_step_on(Rng& rng, const std::vector<double>& division, double amplitude) {
    std::uniform_real_distribution<double> uv(-amplitude, amplitude);
    std::vector<double> v(division.size());
    for (auto& x : v) x = uv(rng);
    return StepSignal(division, std::move(v));
}

inline StepSignal random_step(Rng& rng, double amplitude, std::size_t n_min = 10, std::size_t n_max = 100,
                              double T = 1.0) {
    return random_step_on(rng, random_division(rng, random_steps(rng, n_min, n_max), T), amplitude);
}

inline ParamSignal random_param_on(Rng& rng, const std::vector<double>& division, std::size_t dim,
                                   double amplitude) {
    std::uniform_real_distribution<double> uv(-amplitude, amplitude);
    std::vector<double> flat(division.size() * dim);
    for (auto& x : flat) x = uv(rng);
    return ParamSignal(division, dim, std::move(flat));
}

/// A + B with B a random step perturbation of amplitude delta on A's division.
inline StepSignal perturb(Rng& rng, const StepSignal& a, double delta) {
    std::uniform_real_distribution<double> uv(-delta, delta);
    std::vector<double> v(a.values());
    for (auto& x : v) x += uv(rng);
    return StepSignal(a.division(), std::move(v));
}

inline ParamSignal perturb(Rng& rng, const ParamSignal& a, double delta) {
    std::uniform_real_distribution<double> uv(-delta, delta);
    std::vector<double> v(a.flat_values());
    for (auto& x : v) x += uv(rng);
    return ParamSignal(a.division(), a.dim(), std::move(v));
}

/// Random curve sum_i a_i sin(omega_i t + phase_i), scaled so that
/// sum_i |a_i| omega_i = lip bounds its Lipschitz constant.
struct LipschitzCurve {
    std::vector<double> amp, omega, phase;

    double operator()(double t) const {
        double s = 0.0;
        for (std::size_t i = 0; i < amp.size(); ++i) s += amp[i] * std::sin(omega[i] * t + phase[i]);
        return s;
    }
};

inline LipschitzCurve random_curve(Rng& rng, double lip = 1.0, std::size_t terms = 3) {
    std::uniform_real_distribution<double> ua(-1.0, 1.0), uw(2.0, 12.0), up(0.0, 6.283185307179586);
    LipschitzCurve c;
    double total = 0.0;
    for (std::size_t i = 0; i < terms; ++i) {
        c.amp.push_back(ua(rng));
        c.omega.push_back(uw(rng));
        c.phase.push_back(up(rng));
        total += std::abs(c.amp.back()) * c.omega.back();
    }
    for (auto& a : c.amp) a *= lip / total;
    return c;
}

} // namespace preisach::gen

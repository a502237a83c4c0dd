#pragma once

// Preisach densities psi(u, r, v) >= 0 over parameter u in R^L, play
// threshold r > 0 and play output v, with the envelope constants used by
// every Lipschitz estimate:
//
//   0 <= psi(u, r, v) <= mu(r),          M  = int_0^inf mu(r) dr
//   |grad_u psi(u, r, v)| <= K(r, v),    M1 = int_0^inf int_R K(r, v) dv dr
//
// A model may be an arbitrary callable. The separable family
// psi = c(u) m(r) phi(v) carries closed-form primitives and is what the
// discretization fast path and the built-in presets use.

#include "preisach/error.hpp"
#include "preisach/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace preisach {

using ParamView = std::span<const double>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// a * b with the measure-theoretic convention 0 * inf = 0.
inline double product_0inf(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    return a * b;
}

/// Threshold profile m(r) >= 0.
struct RadialProfile {
    std::function<double(double)> value;
    /// int_a^b m(r) dr; when empty, quadrature is used.
    std::function<double(double, double)> integral;
    /// int_0^inf m(r) dr.
    double total = 0.0;
    /// Declared radius beyond which m is zero or negligible.
    double support = 0.0;

    double integrate(double a, double b) const {
        if (integral) return integral(a, b);
        return quad::integrate(value, a, b);
    }
};

/// Profile phi(v) >= 0 in the play-output variable.
struct VProfile {
    std::function<double(double)> value;
    /// Phi(v) = int_0^v phi(s) ds.
    std::function<double(double)> primitive;
    double sup = 0.0;
    /// int_R phi(v) dv; may be infinite.
    double integral = 0.0;
};

/// Parameter coefficient c(u) >= 0 with declared bounds.
struct Coefficient {
    std::function<double(ParamView)> value;
    double max = 0.0;
    /// Bound on |grad_u c|.
    double lipschitz = 0.0;
    std::size_t dim = 1;
};

struct Separable {
    Coefficient c;
    RadialProfile m;
    VProfile phi;
};

struct DensityModel {
    std::size_t param_dim = 1;
    std::function<double(ParamView, double, double)> psi;
    std::function<double(double)> mu;
    std::function<double(double, double)> kbound;
    /// K*(r) = int_R K(r, v) dv; may return +inf.
    std::function<double(double)> kstar;
    /// Optional closed form of g(u, r, v) = int_0^v psi(u, r, s) ds.
    std::function<double(ParamView, double, double)> primitive;
    double M = 0.0;
    double M1 = 0.0;
    double support_R = 0.0;

    /// Optional bound sup_u psi(u, r, v), finer than mu(r) in v.
    std::function<double(double, double)> v_envelope;
    /// int_R v_envelope(r, v) dv.
    std::function<double(double)> v_envelope_star;
    /// int_0^inf v_envelope_star(r) dr.
    double envelope_total = kInfinity;

    std::optional<Separable> separable;
};

/// g(u, r, v) = int_0^v psi(u, r, s) ds. Closed form when the model supplies
/// one, adaptive Gauss-Legendre quadrature otherwise.
inline double primitive_g(const DensityModel& model, ParamView u, double r, double v,
                          quad::Options opt = {}) {
    if (!(r > 0.0)) throw InvalidArgument("threshold r must be positive");
    if (v == 0.0) return 0.0;
    if (model.primitive) return model.primitive(u, r, v);
    return quad::integrate([&](double s) { return model.psi(u, r, s); }, 0.0, v, opt);
}

inline DensityModel make_separable(Separable parts) {
    if (parts.c.max < 0.0 || parts.c.lipschitz < 0.0) throw InvalidArgument("coefficient bounds must be nonnegative");
    if (parts.phi.sup < 0.0 || parts.m.total < 0.0) throw InvalidArgument("profile bounds must be nonnegative");
    if (!(parts.m.support > 0.0)) throw InvalidArgument("radial profile needs a positive support radius");

    DensityModel model;
    model.param_dim = parts.c.dim;
    const auto c = parts.c;
    const auto m = parts.m;
    const auto phi = parts.phi;
    const double env = c.max * phi.sup;

    model.psi = [c, m, phi](ParamView u, double r, double v) { return c.value(u) * m.value(r) * phi.value(v); };
    model.primitive = [c, m, phi](ParamView u, double r, double v) {
        return c.value(u) * m.value(r) * phi.primitive(v);
    };
    model.mu = [m, env](double r) { return env * m.value(r); };
    model.kbound = [c, m, phi](double r, double v) { return c.lipschitz * m.value(r) * phi.value(v); };
    model.kstar = [c, m, phi](double r) { return product_0inf(c.lipschitz * m.value(r), phi.integral); };
    model.M = env * m.total;
    model.M1 = product_0inf(c.lipschitz * m.total, phi.integral);
    model.support_R = m.support;
    model.v_envelope = [c, m, phi](double r, double v) { return c.max * m.value(r) * phi.value(v); };
    model.v_envelope_star = [c, m, phi](double r) { return product_0inf(c.max * m.value(r), phi.integral); };
    model.envelope_total = product_0inf(c.max * m.total, phi.integral);
    model.separable = std::move(parts);
    return model;
}

namespace profiles {

/// amp * exp(-r / scale).
inline RadialProfile exponential(double amp = 1.0, double scale = 1.0, double support = 2.0) {
    if (amp < 0.0 || !(scale > 0.0)) throw InvalidArgument("exponential profile needs amp >= 0 and scale > 0");
    RadialProfile p;
    p.value = [amp, scale](double r) { return amp * std::exp(-r / scale); };
    p.integral = [amp, scale](double a, double b) {
        return amp * scale * (std::exp(-a / scale) - std::exp(-b / scale));
    };
    p.total = amp * scale;
    p.support = support;
    return p;
}

/// amp on [0, width], zero beyond.
inline RadialProfile uniform(double amp = 1.0, double width = 1.0) {
    if (amp < 0.0 || !(width > 0.0)) throw InvalidArgument("uniform profile needs amp >= 0 and width > 0");
    RadialProfile p;
    p.value = [amp, width](double r) { return (r >= 0.0 && r <= width) ? amp : 0.0; };
    p.integral = [amp, width](double a, double b) {
        const double lo = std::max(a, 0.0);
        const double hi = std::min(b, width);
        return hi > lo ? amp * (hi - lo) : 0.0;
    };
    p.total = amp * width;
    p.support = width;
    return p;
}

inline RadialProfile zero(double support = 1.0) {
    RadialProfile p;
    p.value = [](double) { return 0.0; };
    p.integral = [](double, double) { return 0.0; };
    p.total = 0.0;
    p.support = support;
    return p;
}

/// phi = 1: layers linear in the play output.
inline VProfile one() {
    return {[](double) { return 1.0; }, [](double v) { return v; }, 1.0, kInfinity};
}

/// phi = 1 / (1 + v^2).
inline VProfile cauchy() {
    return {[](double v) { return 1.0 / (1.0 + v * v); }, [](double v) { return std::atan(v); }, 1.0,
            std::numbers::pi};
}

/// phi = exp(-v^2).
inline VProfile gauss() {
    return {[](double v) { return std::exp(-v * v); },
            [](double v) { return 0.5 * std::sqrt(std::numbers::pi) * std::erf(v); }, 1.0,
            std::sqrt(std::numbers::pi)};
}

inline Coefficient constant(double c0 = 1.0, std::size_t dim = 1) {
    if (c0 < 0.0) throw InvalidArgument("coefficient must be nonnegative");
    return {[c0](ParamView) { return c0; }, c0, 0.0, dim};
}

/// c0 * (1 + a * tanh(<b, u>)), |a| <= 1.
inline Coefficient tanh_ridge(double c0, double a, std::vector<double> b) {
    if (c0 < 0.0) throw InvalidArgument("coefficient must be nonnegative");
    if (std::abs(a) > 1.0) throw InvalidArgument("tanh coefficient needs |a| <= 1 to stay nonnegative");
    if (b.empty()) throw InvalidArgument("tanh coefficient needs a direction vector");
    double bnorm = 0.0;
    for (double x : b) bnorm += x * x;
    bnorm = std::sqrt(bnorm);
    const std::size_t dim = b.size();
    return {[c0, a, b = std::move(b)](ParamView u) {
                double s = 0.0;
                for (std::size_t i = 0; i < b.size(); ++i) s += b[i] * u[i];
                return c0 * (1.0 + a * std::tanh(s));
            },
            c0 * (1.0 + std::abs(a)), c0 * std::abs(a) * bnorm, dim};
}

} // namespace profiles

namespace presets {

inline DensityModel exp() {
    return make_separable({profiles::constant(), profiles::exponential(1.0, 1.0, 2.0), profiles::one()});
}

inline DensityModel cauchy() {
    return make_separable({profiles::constant(), profiles::exponential(1.0, 1.0, 2.0), profiles::cauchy()});
}

inline DensityModel uniform() {
    return make_separable({profiles::constant(), profiles::uniform(1.0, 1.0), profiles::one()});
}

inline DensityModel zero() {
    return make_separable({profiles::constant(0.0), profiles::zero(), profiles::one()});
}

} // namespace presets

/// Largest violations found while sampling the density hypotheses; all
/// zero means no counterexample was found.
struct HypothesisReport {
    double negative_psi = 0.0;
    double psi_above_mu = 0.0;
    double gradient_above_k = 0.0;
    std::size_t samples = 0;

    bool ok(double slack = 1e-6) const {
        return negative_psi <= slack && psi_above_mu <= slack && gradient_above_k <= slack;
    }
};

/// Randomized check of psi >= 0, psi <= mu(r) and |grad_u psi| <= K(r, v),
/// the gradient by central differences.
inline HypothesisReport check_hypotheses(const DensityModel& model, std::size_t samples, std::uint64_t seed,
                                         double u_range = 2.0, double v_range = 5.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ur(-u_range, u_range);
    std::uniform_real_distribution<double> rr(1e-6, std::max(model.support_R, 1e-3) * 1.5);
    std::uniform_real_distribution<double> vr(-v_range, v_range);
    HypothesisReport report;
    std::vector<double> u(model.param_dim), up(model.param_dim), um(model.param_dim);
    constexpr double h = 1e-6;
    for (std::size_t i = 0; i < samples; ++i) {
        for (auto& x : u) x = ur(rng);
        const double r = rr(rng);
        const double v = vr(rng);
        const double p = model.psi(u, r, v);
        report.negative_psi = std::max(report.negative_psi, -p);
        report.psi_above_mu = std::max(report.psi_above_mu, p - model.mu(r));
        double g2 = 0.0;
        for (std::size_t l = 0; l < u.size(); ++l) {
            up = u;
            um = u;
            up[l] += h;
            um[l] -= h;
            const double d = (model.psi(up, r, v) - model.psi(um, r, v)) / (2.0 * h);
            g2 += d * d;
        }
        report.gradient_above_k = std::max(report.gradient_above_k, std::sqrt(g2) - model.kbound(r, v));
        ++report.samples;
    }
    return report;
}

} // namespace preisach

#pragma once

// Temperature-dependent piezoelectric constitutive law
//
//   q + alpha(eps) / f(eps) * P(theta)[q] = E / f(eps),
//
// solved by folding the coefficient alpha/f into the density, which then
// depends on the parameter u = (theta, eps), and inverting.

#include "preisach/density.hpp"
#include "preisach/discrete.hpp"
#include "preisach/error.hpp"
#include "preisach/inverse.hpp"
#include "preisach/signals.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace preisach::piezo {

struct PiezoConfig {
    /// Self-similarity function, f >= f_min > 0.
    std::function<double(double)> f;
    /// Mean-field feedback, alpha >= 0.
    std::function<double(double)> alpha;
    double f_min = 0.0;
    /// Declared sup of alpha / f.
    std::optional<double> coeff_max;
    /// Declared Lipschitz constant of eps -> alpha(eps) / f(eps).
    std::optional<double> coeff_lip;
    /// Density over the temperature alone (L = 1).
    DensityModel density;
};

inline void validate(const PiezoConfig& cfg) {
    if (!cfg.f || !cfg.alpha) throw InvalidArgument("piezo config needs both f and alpha");
    if (!(cfg.f_min > 0.0)) throw InvalidArgument("f_min must be positive");
    if (!cfg.coeff_max || !cfg.coeff_lip) {
        throw InvalidArgument("piezo config must declare coeff_max and coeff_lip");
    }
    if (*cfg.coeff_max < 0.0 || *cfg.coeff_lip < 0.0) throw InvalidArgument("coefficient bounds must be nonnegative");
    if (cfg.density.param_dim != 1) throw InvalidArgument("base density must depend on temperature only (L = 1)");
    if (*cfg.coeff_max == 0.0) {
        for (int i = -50; i <= 50; ++i) {
            if (cfg.alpha(i / 50.0) != 0.0) throw InvalidArgument("coeff_max is zero but alpha is not");
        }
    }
}

/// Density over u = (theta, eps): (alpha(eps) / f(eps)) * psi(theta, r, v).
inline DensityModel compose_density(const PiezoConfig& cfg) {
    validate(cfg);
    const double cmax = *cfg.coeff_max;
    const double clip = *cfg.coeff_lip;
    auto coef = [f = cfg.f, alpha = cfg.alpha](double eps) { return alpha(eps) / f(eps); };

    if (cfg.density.separable) {
        Separable parts = *cfg.density.separable;
        const Coefficient base = parts.c;
        parts.c.value = [coef, cv = base.value](ParamView u) { return coef(u[1]) * cv(u.first(1)); };
        parts.c.max = cmax * base.max;
        parts.c.lipschitz = cmax * base.lipschitz + clip * base.max;
        parts.c.dim = 2;
        return make_separable(std::move(parts));
    }

    const DensityModel base = cfg.density;
    DensityModel out;
    out.param_dim = 2;
    out.psi = [coef, base](ParamView u, double r, double v) { return coef(u[1]) * base.psi(u.first(1), r, v); };
    if (base.primitive) {
        out.primitive = [coef, base](ParamView u, double r, double v) {
            return coef(u[1]) * base.primitive(u.first(1), r, v);
        };
    }
    out.mu = [cmax, base](double r) { return cmax * base.mu(r); };
    out.kbound = [cmax, clip, base](double r, double v) {
        const double env = base.v_envelope ? base.v_envelope(r, v) : base.mu(r);
        return cmax * base.kbound(r, v) + clip * env;
    };
    out.kstar = [cmax, clip, base](double r) {
        const double env = base.v_envelope_star ? base.v_envelope_star(r) : kInfinity;
        return product_0inf(cmax, base.kstar(r)) + product_0inf(clip, env);
    };
    out.M = cmax * base.M;
    out.M1 = product_0inf(cmax, base.M1) + product_0inf(clip, base.envelope_total);
    out.support_R = base.support_R;
    if (base.v_envelope) {
        out.v_envelope = [cmax, base](double r, double v) { return cmax * base.v_envelope(r, v); };
    }
    if (base.v_envelope_star) {
        out.v_envelope_star = [cmax, base](double r) { return product_0inf(cmax, base.v_envelope_star(r)); };
    }
    out.envelope_total = product_0inf(cmax, base.envelope_total);
    return out;
}

struct Solution {
    StepSignal q;
    /// P(theta)[q].
    StepSignal polarization;
    /// E / f(eps) on the merged division.
    StepSignal w;
    ParamSignal u;
    /// sup |q + alpha/f P(theta)[q] - E/f|.
    double residual = 0.0;
    double R = 0.0;
    double M = 0.0;
    InversionReport inversion;
};

/// Residual tolerance handed to the inversion so that the constitutive law
/// holds to tol / f_min as well as tol.
inline double inner_tolerance(const PiezoConfig& cfg, double tol) { return tol * std::min(1.0, 1.0 / cfg.f_min); }

/// Solve for q given the field E, strain eps and temperature theta. R defaults
/// to e^M |E / f|.
inline Solution solve(const PiezoConfig& cfg, const StepSignal& E, const StepSignal& eps,
                          const StepSignal& theta, std::size_t k, double tol = kDefaultTolerance,
                          std::optional<double> R = {}) {
    const DensityModel composed = compose_density(cfg);
    const auto division = common_division(E, eps, theta);
    const auto Er = resample(E, division);
    const auto er = resample(eps, division);
    const auto th = resample(theta, division);

    std::vector<double> w(division.size()), coef(division.size()), flat;
    flat.reserve(2 * division.size());
    for (std::size_t n = 0; n < division.size(); ++n) {
        const double fv = cfg.f(er[n]);
        if (!(fv >= cfg.f_min)) {
            throw InvalidArgument("f(eps) = " + std::to_string(fv) + " below f_min at t = " +
                                  std::to_string(division[n]));
        }
        const double a = cfg.alpha(er[n]);
        if (a < 0.0) throw InvalidArgument("alpha(eps) negative at t = " + std::to_string(division[n]));
        coef[n] = a / fv;
        if (coef[n] > *cfg.coeff_max * (1.0 + 1e-12)) {
            throw InvalidArgument("alpha/f exceeds declared coeff_max at t = " + std::to_string(division[n]));
        }
        w[n] = Er[n] / fv;
        flat.push_back(th[n]);
        flat.push_back(er[n]);
    }
    StepSignal ws(division, std::move(w));
    ParamSignal u(division, 2, std::move(flat));

    double radius = R.value_or(inversion_radius(composed.M, ws));
    if (!(radius > 0.0)) radius = cfg.density.support_R;

    const auto op = discretize(composed, k, radius);
    auto inv = invert(op, u, ws, inner_tolerance(cfg, tol));

    const auto base_op = discretize(cfg.density, k, radius);
    auto pol = forward_eval(base_op, ParamSignal(th), inv.q);

    double residual = 0.0;
    for (std::size_t n = 0; n < division.size(); ++n) {
        residual = std::max(residual, std::abs(inv.q[n] + coef[n] * pol[n] - ws[n]));
    }
    return {inv.q, std::move(pol), std::move(ws), std::move(u), residual, radius, composed.M, std::move(inv)};
}

} // namespace preisach::piezo

#pragma once

// Memory-discrete Preisach operator
//
//   P_k(u)[q](t) = sum_j g_j(u(t), xi_{r_j}(t)),   xi_r = play_r[q],
//
// built from a density by layering the threshold axis r_j = j R / k with
// g_j(u, v) = int_{r_{j-1}}^{r_j} g(u, r, v) dr, or supplied directly as
// layer functions satisfying g_j(u, 0) = 0, monotonicity in v and the
// Lipschitz constants mu_j (in v) and K_j (in u).

#include "preisach/density.hpp"
#include "preisach/error.hpp"
#include "preisach/log.hpp"
#include "preisach/play.hpp"
#include "preisach/quadrature.hpp"
#include "preisach/signals.hpp"

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace preisach {

/// The layer functions g_j of a discrete operator.
class LayerSet {
public:
    virtual ~LayerSet() = default;
    virtual std::size_t size() const = 0;
    virtual double value(std::size_t j, ParamView u, double v) const = 0;

    /// sum_j g_j(u, xi_j).
    virtual double sum(ParamView u, std::span<const double> xi) const {
        double s = 0.0;
        for (std::size_t j = 0; j < xi.size(); ++j) s += value(j, u, xi[j]);
        return s;
    }
};

namespace detail {

// g_j(u, v) = c(u) m_j Phi(v) for separable densities.
class SeparableLayers final : public LayerSet {
public:
    SeparableLayers(Coefficient c, VProfile phi, std::vector<double> weights)
        : c_(std::move(c)), phi_(std::move(phi)), weights_(std::move(weights)) {}

    std::size_t size() const override { return weights_.size(); }

    double value(std::size_t j, ParamView u, double v) const override {
        return c_.value(u) * weights_[j] * phi_.primitive(v);
    }

    double sum(ParamView u, std::span<const double> xi) const override {
        double s = 0.0;
        for (std::size_t j = 0; j < xi.size(); ++j) {
            if (xi[j] != 0.0 && weights_[j] != 0.0) s += weights_[j] * phi_.primitive(xi[j]);
        }
        return s == 0.0 ? 0.0 : c_.value(u) * s;
    }

private:
    Coefficient c_;
    VProfile phi_;
    std::vector<double> weights_;
};

// g_j by quadrature over r of the density primitive.
class QuadratureLayers final : public LayerSet {
public:
    QuadratureLayers(DensityModel model, std::vector<double> edges, quad::Options opt)
        : model_(std::move(model)), edges_(std::move(edges)), opt_(opt) {}

    std::size_t size() const override { return edges_.size() - 1; }

    double value(std::size_t j, ParamView u, double v) const override {
        if (v == 0.0) return 0.0;
        return quad::integrate([&](double r) { return primitive_g(model_, u, r, v, opt_); }, edges_[j],
                               edges_[j + 1], opt_);
    }

private:
    DensityModel model_;
    std::vector<double> edges_;
    quad::Options opt_;
};

// User-supplied g_j(u, v).
class CallableLayers final : public LayerSet {
public:
    explicit CallableLayers(std::vector<std::function<double(ParamView, double)>> fns) : fns_(std::move(fns)) {}
    std::size_t size() const override { return fns_.size(); }
    double value(std::size_t j, ParamView u, double v) const override { return fns_[j](u, v); }

private:
    std::vector<std::function<double(ParamView, double)>> fns_;
};

} // namespace detail

class DiscretePreisach {
public:
    /// thresholds strictly increasing and positive; mu, K the per-layer
    /// Lipschitz constants. M, M1 are the continuous-density constants when
    /// the operator came from a density (otherwise sum mu_j, sum K_j).
    DiscretePreisach(std::vector<double> thresholds, std::shared_ptr<const LayerSet> layers, std::vector<double> mu,
                     std::vector<double> K, double R, std::size_t param_dim, std::optional<double> M = {},
                     std::optional<double> M1 = {})
        : thresholds_(std::move(thresholds)),
          layers_(std::move(layers)),
          mu_(std::move(mu)),
          K_(std::move(K)),
          R_(R),
          param_dim_(param_dim) {
        const std::size_t k = thresholds_.size();
        if (k == 0) throw InvalidArgument("discrete operator needs at least one layer");
        if (!layers_ || layers_->size() != k || mu_.size() != k || K_.size() != k) {
            throw InvalidArgument("layer, threshold and constant counts differ");
        }
        for (std::size_t j = 0; j < k; ++j) {
            if (!(thresholds_[j] > 0.0) || (j > 0 && !(thresholds_[j] > thresholds_[j - 1]))) {
                throw InvalidArgument("thresholds must be positive and strictly increasing");
            }
            if (mu_[j] < 0.0 || K_[j] < 0.0) throw InvalidArgument("layer constants must be nonnegative");
        }
        rho_ = 1.0;
        sum_mu_ = 0.0;
        sum_K_ = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            rho_ *= 1.0 + mu_[j];
            sum_mu_ += mu_[j];
            sum_K_ += K_[j];
        }
        M_ = M.value_or(sum_mu_);
        M1_ = M1.value_or(sum_K_);
    }

    /// Operator from explicit layer functions g_j(u, v).
    static DiscretePreisach from_layers(std::vector<double> thresholds,
                                        std::vector<std::function<double(ParamView, double)>> layers,
                                        std::vector<double> mu, std::vector<double> K, std::size_t param_dim = 1) {
        const double R = thresholds.empty() ? 0.0 : thresholds.back();
        auto set = std::make_shared<detail::CallableLayers>(std::move(layers));
        return DiscretePreisach(std::move(thresholds), std::move(set), std::move(mu), std::move(K), R, param_dim);
    }

    std::size_t k() const noexcept { return thresholds_.size(); }
    double R() const noexcept { return R_; }
    std::size_t param_dim() const noexcept { return param_dim_; }
    std::span<const double> thresholds() const noexcept { return thresholds_; }
    std::span<const double> mu() const noexcept { return mu_; }
    std::span<const double> K() const noexcept { return K_; }

    /// prod_j (1 + mu_j).
    double rho_k() const noexcept { return rho_; }
    double sum_mu() const noexcept { return sum_mu_; }
    double sum_K() const noexcept { return sum_K_; }
    double M() const noexcept { return M_; }
    double M1() const noexcept { return M1_; }

    double layer(std::size_t j, ParamView u, double v) const { return layers_->value(j, u, v); }

    /// sum_j g_j(u, xi_j) for a memory vector.
    double evaluate(ParamView u, std::span<const double> memory) const { return layers_->sum(u, memory); }

    /// Zero memory on this operator's thresholds.
    PlayState initial_state() const {
        return PlayState(thresholds_, std::vector<double>(thresholds_.size(), 0.0));
    }

private:
    std::vector<double> thresholds_;
    std::shared_ptr<const LayerSet> layers_;
    std::vector<double> mu_;
    std::vector<double> K_;
    double R_ = 0.0;
    std::size_t param_dim_ = 1;
    double rho_ = 1.0;
    double sum_mu_ = 0.0;
    double sum_K_ = 0.0;
    double M_ = 0.0;
    double M1_ = 0.0;
};

namespace detail {

inline double layer_integral(const std::function<double(double)>& f, double a, double b, quad::Options opt) {
    if (!f) return kInfinity;
    const double probe = f(0.5 * (a + b));
    if (!std::isfinite(probe)) return kInfinity;
    return quad::integrate(f, a, b, opt);
}

} // namespace detail

/// Layer the density over thresholds r_j = j R / k (R defaults to the model's
/// support radius).
inline DiscretePreisach discretize(const DensityModel& model, std::size_t k, std::optional<double> R_override = {},
                                   quad::Options opt = {}) {
    if (k == 0) throw InvalidArgument("discretization level k must be at least 1");
    const double R = R_override.value_or(model.support_R);
    if (!(R > 0.0) || !std::isfinite(R)) throw InvalidArgument("truncation radius R must be positive and finite");

    std::vector<double> edges(k + 1);
    for (std::size_t j = 0; j <= k; ++j) edges[j] = R * static_cast<double>(j) / static_cast<double>(k);
    edges.back() = R;
    std::vector<double> thresholds(edges.begin() + 1, edges.end());

    std::vector<double> mu(k), K(k);
    std::shared_ptr<const LayerSet> layers;
    if (model.separable) {
        const auto& parts = *model.separable;
        std::vector<double> weights(k);
        for (std::size_t j = 0; j < k; ++j) {
            weights[j] = parts.m.integrate(edges[j], edges[j + 1]);
            mu[j] = parts.c.max * parts.phi.sup * weights[j];
            K[j] = product_0inf(parts.c.lipschitz * weights[j], parts.phi.integral);
        }
        layers = std::make_shared<detail::SeparableLayers>(parts.c, parts.phi, std::move(weights));
    } else {
        for (std::size_t j = 0; j < k; ++j) {
            mu[j] = detail::layer_integral(model.mu, edges[j], edges[j + 1], opt);
            K[j] = detail::layer_integral(model.kstar, edges[j], edges[j + 1], opt);
        }
        layers = std::make_shared<detail::QuadratureLayers>(model, edges, opt);
    }
    return DiscretePreisach(std::move(thresholds), std::move(layers), std::move(mu), std::move(K), R,
                            model.param_dim, model.M, model.M1);
}

namespace detail {

inline void check_param_dim(const DiscretePreisach& op, const ParamSignal& u) {
    if (u.dim() != op.param_dim()) {
        throw InvalidArgument("parameter dimension " + std::to_string(u.dim()) + " does not match operator (" +
                              std::to_string(op.param_dim()) + ")");
    }
}

inline void warn_if_beyond_radius(const DiscretePreisach& op, const StepSignal& q) {
    const double amp = sup_norm(q);
    if (amp > op.R()) {
        log::warn("input amplitude " + std::to_string(amp) + " exceeds truncation radius " + std::to_string(op.R()) +
                  "; plays above R are dropped");
    }
}

} // namespace detail

/// P_k(u)[q] on the merged division of u and q.
inline StepSignal forward_eval(const DiscretePreisach& op, const ParamSignal& u, const StepSignal& q) {
    detail::check_param_dim(op, u);
    detail::warn_if_beyond_radius(op, q);
    auto merged = merge_divisions(u, q);
    PlayState state = op.initial_state();
    std::vector<double> out(merged.division.size());
    for (std::size_t n = 0; n < out.size(); ++n) {
        state.update(merged.second[n]);
        out[n] = op.evaluate(merged.first.node(n), state.memory());
    }
    return StepSignal(std::move(merged.division), std::move(out));
}

/// q + P_k(u)[q].
inline StepSignal forward_apply(const DiscretePreisach& op, const ParamSignal& u, const StepSignal& q) {
    auto p = forward_eval(op, u, q);
    std::vector<double> w(p.nodes());
    for (std::size_t n = 0; n < w.size(); ++n) w[n] = q.at(p.division()[n]) + p[n];
    return StepSignal(p.division(), std::move(w));
}

/// sup_t |P_k(u)[q](t) - P_{k_ref}(u)[q](t)|, both layered up to the same R.
inline double refine_error(const DensityModel& model, const ParamSignal& u, const StepSignal& q, std::size_t k,
                           std::size_t k_ref, std::optional<double> R = {}) {
    if (k == k_ref) return 0.0;
    const auto coarse = forward_eval(discretize(model, k, R), u, q);
    const auto fine = forward_eval(discretize(model, k_ref, R), u, q);
    return sup_norm(coarse - fine);
}

/// Largest violations of the discrete-layer hypotheses found by sampling.
struct LayerReport {
    double nonzero_at_origin = 0.0;
    double decreasing = 0.0;
    double v_lipschitz = 0.0;
    double u_lipschitz = 0.0;

    bool ok(double slack = 1e-9) const {
        return nonzero_at_origin <= slack && decreasing <= slack && v_lipschitz <= slack && u_lipschitz <= slack;
    }
};

inline LayerReport check_layers(const DiscretePreisach& op, std::size_t samples, std::uint64_t seed,
                                double u_range = 2.0, double v_range = 3.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ur(-u_range, u_range);
    std::uniform_real_distribution<double> vr(-v_range, v_range);
    LayerReport rep;
    std::vector<double> u1(op.param_dim()), u2(op.param_dim());
    for (std::size_t i = 0; i < samples; ++i) {
        const std::size_t j = i % op.k();
        for (auto& x : u1) x = ur(rng);
        for (auto& x : u2) x = ur(rng);
        double v1 = vr(rng), v2 = vr(rng);
        if (v1 > v2) std::swap(v1, v2);
        const double a = op.layer(j, u1, v1);
        const double b = op.layer(j, u1, v2);
        const double scale = 1e-12 * (1.0 + std::abs(a) + std::abs(b));
        rep.nonzero_at_origin = std::max(rep.nonzero_at_origin, std::abs(op.layer(j, u1, 0.0)));
        rep.decreasing = std::max(rep.decreasing, a - b - scale);
        rep.v_lipschitz = std::max(rep.v_lipschitz, std::abs(b - a) - op.mu()[j] * (v2 - v1) - scale);
        const double c = op.layer(j, u2, v1);
        rep.u_lipschitz = std::max(rep.u_lipschitz, std::abs(c - a) - op.K()[j] * euclidean_distance(u1, u2) - scale);
    }
    return rep;
}

} // namespace preisach

#pragma once

// Inversion of q + P_k(u)[q] = w on step signals, one node at a time.
//
// At node n the unknown q enters only through the dead-zone updates of the
// play memories, so
//
//   Phi(x) = x + sum_j g_j(u_n, max{x - r_j, min{xi_j, x + r_j}})
//
// is continuous with Phi(a) - Phi(b) >= a - b for a >= b. The root of
// Phi(x) = w_n is unique, and a residual |Phi(x) - w_n| <= tol bounds the
// error in x by tol.

#include "preisach/discrete.hpp"
#include "preisach/error.hpp"
#include "preisach/play.hpp"
#include "preisach/signals.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace preisach {

inline constexpr double kDefaultTolerance = 1e-10;

struct StepSolution {
    double q = 0.0;
    PlayState state;
    int iterations = 0;
    double residual = 0.0;
};

namespace detail {

class StepEquation {
public:
    StepEquation(const DiscretePreisach& op, ParamView u, std::span<const double> memory, double w)
        : op_(op), u_(u), memory_(memory), w_(w), candidate_(memory.size()) {}

    /// Phi(x) - w.
    double operator()(double x) {
        const auto r = op_.thresholds();
        for (std::size_t j = 0; j < candidate_.size(); ++j) candidate_[j] = dead_zone(x, memory_[j], r[j]);
        return x + op_.evaluate(u_, candidate_) - w_;
    }

private:
    const DiscretePreisach& op_;
    ParamView u_;
    std::span<const double> memory_;
    double w_;
    std::vector<double> candidate_;
};

} // namespace detail

/// Solve Phi(q) = w_n for the node value and advance the memory.
inline StepSolution invert_step(const DiscretePreisach& op, ParamView u_n, double w_n, const PlayState& state,
                                double tol = kDefaultTolerance) {
    if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
    if (state.size() != op.k()) throw InvalidArgument("play state does not match the operator");
    detail::StepEquation F(op, u_n, state.memory(), w_n);

    StepSolution sol;
    auto finish = [&](double x, double fx) {
        sol.q = x;
        sol.residual = std::abs(fx);
        sol.state = play_state_step(state, x);
        return sol;
    };

    // Phi(w) - w = S(w). Monotone layers make [w - S, w] (S > 0) or
    // [w, w - S] (S < 0) a bracket.
    const double f0 = F(w_n);
    ++sol.iterations;
    if (std::abs(f0) <= tol) return finish(w_n, f0);

    double lo, hi, flo, fhi;
    double step = std::abs(f0);
    if (f0 > 0.0) {
        hi = w_n;
        fhi = f0;
        lo = w_n - step;
        flo = F(lo);
        for (int i = 0; flo > 0.0; ++i) {
            if (i >= 64) throw NumericalError("root bracket expansion failed (layers not monotone?)", std::abs(flo));
            step *= 2.0;
            hi = lo;
            fhi = flo;
            lo = w_n - step;
            flo = F(lo);
        }
    } else {
        lo = w_n;
        flo = f0;
        hi = w_n + step;
        fhi = F(hi);
        for (int i = 0; fhi < 0.0; ++i) {
            if (i >= 64) throw NumericalError("root bracket expansion failed (layers not monotone?)", std::abs(fhi));
            step *= 2.0;
            lo = hi;
            flo = fhi;
            hi = w_n + step;
            fhi = F(hi);
        }
    }
    ++sol.iterations;

    // Bisection, with secant steps once the bracket is narrow. Two secant
    // steps keeping the same endpoint force a bisection.
    constexpr double kSecantWidth = 1e-3;
    int stale_lo = 0, stale_hi = 0;
    double best = std::abs(flo) < std::abs(fhi) ? lo : hi;
    double fbest = std::min(std::abs(flo), std::abs(fhi));
    for (int iter = 0; iter < 400; ++iter) {
        if (std::abs(flo) <= tol) return finish(lo, flo);
        if (std::abs(fhi) <= tol) return finish(hi, fhi);
        double x;
        const bool narrow = hi - lo < kSecantWidth;
        if (narrow && stale_lo < 2 && stale_hi < 2 && fhi != flo) {
            x = lo - flo * (hi - lo) / (fhi - flo);
            if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
        } else {
            x = 0.5 * (lo + hi);
            stale_lo = stale_hi = 0;
        }
        if (x <= lo || x >= hi) break;  // bracket exhausted at double resolution
        const double fx = F(x);
        ++sol.iterations;
        if (std::abs(fx) < fbest) {
            fbest = std::abs(fx);
            best = x;
        }
        if (std::abs(fx) <= tol) return finish(x, fx);
        if (fx < 0.0) {
            lo = x;
            flo = fx;
            stale_lo = 0;
            ++stale_hi;
        } else {
            hi = x;
            fhi = fx;
            stale_hi = 0;
            ++stale_lo;
        }
    }
    throw NumericalError("step equation residual " + std::to_string(fbest) + " above tolerance at x = " +
                             std::to_string(best),
                         fbest);
}

struct InversionReport {
    StepSignal q;
    double residual_sup = 0.0;
    double rho_k = 1.0;
    double bound_eM = 1.0;
    std::vector<int> per_step_iters;
};

/// Unique step solution q of q + P_k(u)[q] = w on the merged division.
inline InversionReport invert(const DiscretePreisach& op, const ParamSignal& u, const StepSignal& w,
                              double tol = kDefaultTolerance) {
    detail::check_param_dim(op, u);
    auto merged = merge_divisions(u, w);
    PlayState state = op.initial_state();
    std::vector<double> q(merged.division.size());
    std::vector<int> iters(q.size());
    for (std::size_t n = 0; n < q.size(); ++n) {
        auto step = invert_step(op, merged.first.node(n), merged.second[n], state, tol);
        q[n] = step.q;
        iters[n] = step.iterations;
        state = std::move(step.state);
    }
    StepSignal qs(merged.division, std::move(q));
    const double residual = sup_norm(forward_apply(op, merged.first, qs) - merged.second);
    if (residual > tol) {
        throw NumericalError("inversion residual " + std::to_string(residual) + " exceeds tolerance", residual);
    }
    return {std::move(qs), residual, op.rho_k(), std::exp(op.M()), std::move(iters)};
}

/// Lipschitz constants of the inverse: rho_k and sum K_j for P_k, e^M and
/// M1 for the limit operator.
struct LipschitzConstants {
    double rho_k = 1.0;
    double eM = 1.0;
    double sum_K = 0.0;
    double M1 = 0.0;
};

inline LipschitzConstants certified_lipschitz(const DiscretePreisach& op, double M, double M1) {
    return {op.rho_k(), std::exp(M), op.sum_K(), M1};
}

inline LipschitzConstants certified_lipschitz(const DiscretePreisach& op) {
    return certified_lipschitz(op, op.M(), op.M1());
}

/// Truncation radius e^M max{|w|, |w_hat|} that keeps every active play
/// represented.
inline double inversion_radius(double M, const StepSignal& w) { return std::exp(M) * sup_norm(w); }

inline double inversion_radius(double M, const StepSignal& w, const StepSignal& w_hat) {
    return std::exp(M) * std::max(sup_norm(w), sup_norm(w_hat));
}

struct StabilityRow {
    double t = 0.0;
    double diff = 0.0;      ///< |q(t) - q_hat(t)|
    double dw = 0.0;        ///< |w - w_hat|_{[0,t]}
    double du = 0.0;        ///< |u - u_hat|_{[0,t]}
    double rho_bound = 0.0; ///< rho_k (dw + sum K_j du) + 2 tol
    double eM_bound = 0.0;  ///< e^M (dw + M1 du) + 2 tol
};

struct StabilityReport {
    std::vector<StabilityRow> rows;
    double rho_k = 1.0;
    double eM = 1.0;
    double sum_K = 0.0;
    double M1 = 0.0;
    /// min over t of bound - diff; negative means a violation.
    double min_slack_rho = kInfinity;
    double min_slack_eM = kInfinity;

    bool ok() const { return min_slack_rho >= 0.0 && min_slack_eM >= 0.0; }
};

/// Invert both input pairs and compare |q - q_hat| with the discrete bound
/// rho_k (|w - w_hat| + sum K_j |u - u_hat|) and the limit bound
/// e^M (|w - w_hat| + M1 |u - u_hat|), cumulatively in t.
inline StabilityReport stability_check(const DiscretePreisach& op, const ParamSignal& u, const StepSignal& w,
                                       const ParamSignal& u_hat, const StepSignal& w_hat,
                                       double tol = kDefaultTolerance) {
    const std::vector<double>* ds[] = {&u.division(), &w.division(), &u_hat.division(), &w_hat.division()};
    const auto division = common_division(std::span<const std::vector<double>* const>(ds));
    const auto U = resample(u, division);
    const auto Uh = resample(u_hat, division);
    const auto W = resample(w, division);
    const auto Wh = resample(w_hat, division);
    const auto q = invert(op, U, W, tol).q;
    const auto qh = invert(op, Uh, Wh, tol).q;

    StabilityReport rep;
    const auto c = certified_lipschitz(op);
    rep.rho_k = c.rho_k;
    rep.eM = c.eM;
    rep.sum_K = c.sum_K;
    rep.M1 = op.M1();
    double dw = 0.0, du = 0.0;
    for (std::size_t n = 0; n < division.size(); ++n) {
        dw = std::max(dw, std::abs(W[n] - Wh[n]));
        du = std::max(du, euclidean_distance(U.node(n), Uh.node(n)));
        StabilityRow row;
        row.t = division[n];
        row.diff = std::abs(q[n] - qh[n]);
        row.dw = dw;
        row.du = du;
        row.rho_bound = rep.rho_k * (dw + product_0inf(rep.sum_K, du)) + 2.0 * tol;
        row.eM_bound = rep.eM * (dw + product_0inf(rep.M1, du)) + 2.0 * tol;
        rep.min_slack_rho = std::min(rep.min_slack_rho, row.rho_bound - row.diff);
        rep.min_slack_eM = std::min(rep.min_slack_eM, row.eM_bound - row.diff);
        rep.rows.push_back(row);
    }
    return rep;
}

struct RegularityRow {
    double t0 = 0.0;
    double h = 0.0;
    double dq = 0.0;    ///< |q(t0) - q(t0 - h)|
    double bound = 0.0; ///< e^M (osc w + M1 osc u) + 2 tol
};

struct RegularityReport {
    StepSignal q;
    std::vector<RegularityRow> rows;
    double min_slack = kInfinity;
    bool ok() const { return min_slack >= 0.0; }
};

/// Per-step oscillation bound for inputs sampled from continuous curves:
/// |q(t0) - q(t0 - h)| <= e^M (|w - w(t0 - h)|_{[t0-h, t0]} + M1 |u - u(t0 - h)|_{[t0-h, t0]}).
inline RegularityReport regularity_check(const DiscretePreisach& op, const ParamSignal& u, const StepSignal& w,
                                         double tol = kDefaultTolerance) {
    auto inv = invert(op, u, w, tol);
    const auto U = resample(u, inv.q.division());
    const auto W = resample(w, inv.q.division());
    const double eM = std::exp(op.M());
    RegularityReport rep{inv.q, {}, kInfinity};
    const auto& d = inv.q.division();
    for (std::size_t n = 1; n < d.size(); ++n) {
        RegularityRow row;
        row.t0 = d[n];
        row.h = d[n] - d[n - 1];
        row.dq = std::abs(inv.q[n] - inv.q[n - 1]);
        // on a step grid the window [t0 - h, t0] sees exactly nodes n - 1 and n
        const double ow = std::abs(W[n] - W[n - 1]);
        const double ou = euclidean_distance(U.node(n), U.node(n - 1));
        row.bound = eM * (ow + product_0inf(op.M1(), ou)) + 2.0 * tol;
        rep.min_slack = std::min(rep.min_slack, row.bound - row.dq);
        rep.rows.push_back(row);
    }
    return rep;
}

/// max over the nodes of `coarse` of |coarse(t) - fine(t)|.
inline double agreement_at_nodes(const StepSignal& coarse, const StepSignal& fine) {
    double m = 0.0;
    for (std::size_t n = 0; n < coarse.nodes(); ++n) {
        m = std::max(m, std::abs(coarse[n] - fine.at(coarse.division()[n])));
    }
    return m;
}

} // namespace preisach

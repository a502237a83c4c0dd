#pragma once

// Scalar play operator on step inputs, realized by the exact dead-zone
// recursion. Only max/min/+/- enter, so composition identities hold to
// rounding.

#include "preisach/error.hpp"
#include "preisach/signals.hpp"

#include <algorithm>
#include <span>
#include <vector>

namespace preisach {

namespace detail {
inline void require_threshold(double r) {
    if (!(r > 0.0)) throw InvalidArgument("play threshold must be positive");
}
} // namespace detail

/// Initial memory max{q0 - r, min{0, q0 + r}}.
inline double play_init(double q0, double r) {
    detail::require_threshold(r);
    return std::max(q0 - r, std::min(0.0, q0 + r));
}

/// One step of the play: max{q - r, min{xi_prev, q + r}}.
inline double play_update(double xi_prev, double qn, double r) {
    detail::require_threshold(r);
    return std::max(qn - r, std::min(xi_prev, qn + r));
}

/// Output of the play with threshold r, on the division of q.
inline StepSignal play_trajectory(const StepSignal& q, double r) {
    detail::require_threshold(r);
    std::vector<double> xi(q.nodes());
    xi[0] = play_init(q[0], r);
    for (std::size_t n = 1; n < q.nodes(); ++n) xi[n] = play_update(xi[n - 1], q[n], r);
    return StepSignal(q.division(), std::move(xi));
}

/// Memory of a bank of plays with thresholds r_1 < ... < r_k.
class PlayState {
public:
    PlayState() = default;

    /// Zero memory; thresholds are sorted, duplicates and non-positive values rejected.
    explicit PlayState(std::vector<double> thresholds)
        : thresholds_(std::move(thresholds)), memory_(thresholds_.size(), 0.0) {
        std::sort(thresholds_.begin(), thresholds_.end());
        for (std::size_t j = 0; j < thresholds_.size(); ++j) {
            detail::require_threshold(thresholds_[j]);
            if (j > 0 && thresholds_[j] == thresholds_[j - 1]) {
                throw InvalidArgument("duplicate play threshold");
            }
        }
    }

    /// Memory for thresholds already sorted ascending (not re-checked).
    PlayState(std::vector<double> sorted_thresholds, std::vector<double> memory)
        : thresholds_(std::move(sorted_thresholds)), memory_(std::move(memory)) {
        if (memory_.size() != thresholds_.size()) throw InvalidArgument("memory/threshold size mismatch");
    }

    std::span<const double> thresholds() const noexcept { return thresholds_; }
    std::span<const double> memory() const noexcept { return memory_; }
    std::size_t size() const noexcept { return thresholds_.size(); }

    /// Memory as produced by play_init, i.e. the state after the first input value.
    void initialize(double q0) {
        for (std::size_t j = 0; j < size(); ++j) memory_[j] = play_init(q0, thresholds_[j]);
    }

    void update(double qn) {
        for (std::size_t j = 0; j < size(); ++j) memory_[j] = play_update(memory_[j], qn, thresholds_[j]);
    }

    friend bool operator==(const PlayState&, const PlayState&) = default;

private:
    std::vector<double> thresholds_;
    std::vector<double> memory_;
};

/// Apply play_update to every threshold.
inline PlayState play_state_step(PlayState state, double qn) {
    state.update(qn);
    return state;
}

/// Dead-zone candidate for a single play: the memory that would result from input qhat.
inline double dead_zone(double qhat, double xi_prev, double r) {
    return std::max(qhat - r, std::min(xi_prev, qhat + r));
}

} // namespace preisach

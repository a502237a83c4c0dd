#pragma once

// Right-continuous step signals on [0, T].
//
// A signal is a division 0 = s_0 < s_1 < ... < s_N = T together with values
// q_0..q_N; q_{n-1} holds on [s_{n-1}, s_n) and q_N holds at the single
// point T. The signal may therefore jump at T.

#include "preisach/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace preisach {

namespace detail {

inline void validate_division(const std::vector<double>& division) {
    if (division.size() < 2) {
        throw InvalidArgument("step signal needs at least two division points (N >= 1)");
    }
    if (division.front() != 0.0) {
        throw InvalidArgument("division must start at t = 0");
    }
    for (std::size_t n = 1; n < division.size(); ++n) {
        if (!(division[n] > division[n - 1])) {
            throw InvalidArgument("division is not strictly increasing at index " + std::to_string(n));
        }
    }
    for (double t : division) {
        if (!std::isfinite(t)) throw InvalidArgument("division contains a non-finite time");
    }
}

// Index n of the value active at time t: largest n with s_n <= t.
inline std::size_t active_index(const std::vector<double>& division, double t) {
    if (t < 0.0 || t > division.back() || std::isnan(t)) {
        throw InvalidArgument("time " + std::to_string(t) + " outside [0, T]");
    }
    auto it = std::upper_bound(division.begin(), division.end(), t);
    return static_cast<std::size_t>(it - division.begin()) - 1;
}

} // namespace detail

/// Scalar right-continuous step function. Immutable after construction.
class StepSignal {
public:
    StepSignal(std::vector<double> division, std::vector<double> values)
        : division_(std::move(division)), values_(std::move(values)) {
        detail::validate_division(division_);
        if (values_.size() != division_.size()) {
            throw InvalidArgument("value count " + std::to_string(values_.size()) +
                                  " does not match division size " + std::to_string(division_.size()));
        }
    }

    const std::vector<double>& division() const noexcept { return division_; }
    const std::vector<double>& values() const noexcept { return values_; }

    /// Number of intervals N; there are N + 1 nodes.
    std::size_t steps() const noexcept { return division_.size() - 1; }
    std::size_t nodes() const noexcept { return division_.size(); }
    double final_time() const noexcept { return division_.back(); }

    double operator[](std::size_t n) const { return values_[n]; }

    std::size_t index_at(double t) const { return detail::active_index(division_, t); }

    /// Value at t, right-continuous.
    double at(double t) const { return values_[index_at(t)]; }

    friend bool operator==(const StepSignal&, const StepSignal&) = default;

private:
    std::vector<double> division_;
    std::vector<double> values_;
};

/// R^L-valued right-continuous step function, values stored node-major.
class ParamSignal {
public:
    ParamSignal(std::vector<double> division, std::vector<std::vector<double>> values)
        : division_(std::move(division)) {
        detail::validate_division(division_);
        if (values.size() != division_.size()) {
            throw InvalidArgument("parameter value count does not match division size");
        }
        dim_ = values.front().size();
        if (dim_ == 0) throw InvalidArgument("parameter dimension L must be at least 1");
        flat_.reserve(dim_ * values.size());
        for (const auto& v : values) {
            if (v.size() != dim_) throw InvalidArgument("parameter vectors have inconsistent dimension");
            flat_.insert(flat_.end(), v.begin(), v.end());
        }
    }

    ParamSignal(std::vector<double> division, std::size_t dim, std::vector<double> flat)
        : division_(std::move(division)), dim_(dim), flat_(std::move(flat)) {
        detail::validate_division(division_);
        if (dim_ == 0) throw InvalidArgument("parameter dimension L must be at least 1");
        if (flat_.size() != dim_ * division_.size()) {
            throw InvalidArgument("parameter value count does not match division size");
        }
    }

    /// Scalar parameter (L = 1) wrapped from a step signal.
    explicit ParamSignal(const StepSignal& s) : ParamSignal(s.division(), 1, s.values()) {}

    /// Constant parameter vector on the given division.
    static ParamSignal constant(std::vector<double> division, std::span<const double> value) {
        std::vector<double> flat;
        flat.reserve(division.size() * value.size());
        for (std::size_t n = 0; n < division.size(); ++n) flat.insert(flat.end(), value.begin(), value.end());
        return ParamSignal(std::move(division), value.size(), std::move(flat));
    }

    const std::vector<double>& division() const noexcept { return division_; }
    const std::vector<double>& flat_values() const noexcept { return flat_; }
    std::size_t dim() const noexcept { return dim_; }
    std::size_t steps() const noexcept { return division_.size() - 1; }
    std::size_t nodes() const noexcept { return division_.size(); }
    double final_time() const noexcept { return division_.back(); }

    std::span<const double> node(std::size_t n) const { return {flat_.data() + n * dim_, dim_}; }

    std::size_t index_at(double t) const { return detail::active_index(division_, t); }
    std::span<const double> at(double t) const { return node(index_at(t)); }

    /// Component l as a scalar step signal.
    StepSignal component(std::size_t l) const {
        std::vector<double> v(nodes());
        for (std::size_t n = 0; n < nodes(); ++n) v[n] = flat_[n * dim_ + l];
        return StepSignal(division_, std::move(v));
    }

    friend bool operator==(const ParamSignal&, const ParamSignal&) = default;

private:
    std::vector<double> division_;
    std::size_t dim_ = 0;
    std::vector<double> flat_;
};

inline StepSignal make_step_signal(std::vector<double> division, std::vector<double> values) {
    return StepSignal(std::move(division), std::move(values));
}

inline double euclidean_norm(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

inline double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

/// Sorted union of several divisions. All must share the same final time,
/// compared exactly.
inline std::vector<double> common_division(std::span<const std::vector<double>* const> divisions) {
    if (divisions.empty()) throw InvalidArgument("no divisions to merge");
    const double T = divisions.front()->back();
    std::vector<double> out;
    for (const auto* d : divisions) {
        if (d->back() != T) {
            throw InvalidArgument("final times differ (" + std::to_string(T) + " vs " +
                                  std::to_string(d->back()) + ")");
        }
        std::vector<double> merged;
        merged.reserve(out.size() + d->size());
        std::set_union(out.begin(), out.end(), d->begin(), d->end(), std::back_inserter(merged));
        out = std::move(merged);
    }
    return out;
}

template <typename... Signals>
std::vector<double> common_division(const Signals&... signals) {
    const std::vector<double>* ds[] = {&signals.division()...};
    return common_division(std::span<const std::vector<double>* const>(ds));
}

/// Re-express a signal on a finer division containing its own nodes.
inline StepSignal resample(const StepSignal& x, const std::vector<double>& division) {
    if (division.back() != x.final_time()) throw InvalidArgument("final times differ");
    std::vector<double> v(division.size());
    for (std::size_t n = 0; n < division.size(); ++n) v[n] = x.at(division[n]);
    return StepSignal(division, std::move(v));
}

inline ParamSignal resample(const ParamSignal& x, const std::vector<double>& division) {
    if (division.back() != x.final_time()) throw InvalidArgument("final times differ");
    std::vector<double> flat;
    flat.reserve(division.size() * x.dim());
    for (double t : division) {
        auto v = x.at(t);
        flat.insert(flat.end(), v.begin(), v.end());
    }
    return ParamSignal(division, x.dim(), std::move(flat));
}

template <typename A, typename B>
struct Merged {
    std::vector<double> division;
    A first;
    B second;
};

/// Put two signals on the union of their divisions.
template <typename A, typename B>
Merged<A, B> merge_divisions(const A& a, const B& b) {
    auto division = common_division(a, b);
    auto ra = resample(a, division);
    auto rb = resample(b, division);
    return {std::move(division), std::move(ra), std::move(rb)};
}

/// Pointwise combination of two scalar signals on their merged division.
template <typename Op>
StepSignal combine(const StepSignal& a, const StepSignal& b, Op op) {
    auto division = common_division(a, b);
    std::vector<double> v(division.size());
    for (std::size_t n = 0; n < division.size(); ++n) v[n] = op(a.at(division[n]), b.at(division[n]));
    return StepSignal(std::move(division), std::move(v));
}

inline StepSignal operator-(const StepSignal& a, const StepSignal& b) {
    return combine(a, b, std::minus<>{});
}

inline StepSignal operator+(const StepSignal& a, const StepSignal& b) {
    return combine(a, b, std::plus<>{});
}

/// |x|_{[s,t]} = sup of |x(tau)| over tau in [s, t].
inline double sup_seminorm(const StepSignal& x, double s, double t) {
    if (s > t) throw InvalidArgument("seminorm interval has s > t");
    const std::size_t lo = x.index_at(s);
    const std::size_t hi = x.index_at(t);
    double m = 0.0;
    for (std::size_t n = lo; n <= hi; ++n) m = std::max(m, std::abs(x[n]));
    return m;
}

inline double sup_norm(const StepSignal& x) {
    double m = 0.0;
    for (double v : x.values()) m = std::max(m, std::abs(v));
    return m;
}

/// sup of the Euclidean norm of x over [s, t].
inline double sup_seminorm(const ParamSignal& x, double s, double t) {
    if (s > t) throw InvalidArgument("seminorm interval has s > t");
    const std::size_t lo = x.index_at(s);
    const std::size_t hi = x.index_at(t);
    double m = 0.0;
    for (std::size_t n = lo; n <= hi; ++n) m = std::max(m, euclidean_norm(x.node(n)));
    return m;
}

/// sup over tau in [t0 - h, t0] of |x(tau) - x(t0 - h)|.
inline double oscillation(const StepSignal& x, double t0, double h) {
    if (h < 0.0) throw InvalidArgument("oscillation window must be nonnegative");
    const double start = t0 - h;
    const std::size_t lo = x.index_at(start);
    const std::size_t hi = x.index_at(t0);
    const double base = x[lo];
    double m = 0.0;
    for (std::size_t n = lo; n <= hi; ++n) m = std::max(m, std::abs(x[n] - base));
    return m;
}

inline double oscillation(const ParamSignal& x, double t0, double h) {
    if (h < 0.0) throw InvalidArgument("oscillation window must be nonnegative");
    const std::size_t lo = x.index_at(t0 - h);
    const std::size_t hi = x.index_at(t0);
    double m = 0.0;
    for (std::size_t n = lo; n <= hi; ++n) m = std::max(m, euclidean_distance(x.node(n), x.node(lo)));
    return m;
}

/// Uniform division t_i = T * i / N (exact at shared nodes of nested grids
/// when T is an integer).
inline std::vector<double> uniform_division(double T, std::size_t N) {
    if (N == 0 || !(T > 0.0)) throw InvalidArgument("uniform division needs N >= 1 and T > 0");
    std::vector<double> d(N + 1);
    for (std::size_t i = 0; i <= N; ++i) d[i] = (T * static_cast<double>(i)) / static_cast<double>(N);
    d.back() = T;
    return d;
}

/// Sample a function of time onto a division.
template <typename F>
StepSignal sample(F&& f, const std::vector<double>& division) {
    std::vector<double> v(division.size());
    for (std::size_t n = 0; n < division.size(); ++n) v[n] = f(division[n]);
    return StepSignal(division, std::move(v));
}

/// Sample a vector-valued function (returning something iterable) onto a division.
template <typename F>
ParamSignal sample_param(F&& f, const std::vector<double>& division, std::size_t dim) {
    std::vector<double> flat;
    flat.reserve(division.size() * dim);
    for (double t : division) {
        auto v = f(t);
        if (v.size() != dim) throw InvalidArgument("sampled parameter has wrong dimension");
        flat.insert(flat.end(), v.begin(), v.end());
    }
    return ParamSignal(division, dim, std::move(flat));
}

} // namespace preisach

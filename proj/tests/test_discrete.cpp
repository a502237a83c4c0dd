#include <gtest/gtest.h>

#include "oracles.hpp"
#include "preisach/discrete.hpp"
#include "preisach/random.hpp"

#include <cmath>

using namespace preisach;

namespace {

DensityModel generic_copy(DensityModel m) {
    m.primitive = nullptr;
    m.separable.reset();
    return m;
}

ParamSignal zero_param(const std::vector<double>& division, std::size_t dim = 1) {
    return ParamSignal::constant(division, std::vector<double>(dim, 0.0));
}

} // namespace

TEST(Discretize, ExpLayerConstants) {
    const auto op = discretize(presets::exp(), 2, 2.0);
    ASSERT_EQ(op.k(), 2u);
    EXPECT_EQ(op.thresholds()[0], 1.0);
    EXPECT_EQ(op.thresholds()[1], 2.0);
    EXPECT_NEAR(op.mu()[0], 0.6321205588285577, 1e-15);
    EXPECT_NEAR(op.mu()[1], 0.23254415793482963, 1e-15);
    EXPECT_NEAR(op.rho_k(), (1 + 0.6321205588285577) * (1 + 0.23254415793482963), 1e-14);
    EXPECT_EQ(op.K()[0], 0.0);
    EXPECT_EQ(op.M(), 1.0);
}

TEST(Discretize, RejectsBadArguments) {
    EXPECT_THROW(discretize(presets::exp(), 0), InvalidArgument);
    EXPECT_THROW(discretize(presets::exp(), 4, 0.0), InvalidArgument);
    EXPECT_THROW(discretize(presets::exp(), 4, -1.0), InvalidArgument);
}

TEST(Discretize, RhoBelowExpM) {
    for (const auto& model : {presets::exp(), presets::cauchy(), presets::uniform()}) {
        for (std::size_t k = 1; k <= 256; ++k) {
            const auto op = discretize(model, k);
            ASSERT_LE(op.rho_k(), std::exp(model.M) * (1 + 1e-15)) << "k = " << k;
            ASSERT_LE(op.sum_mu(), model.M + 1e-14);
        }
    }
}

TEST(Discretize, LayersSatisfyHypotheses) {
    const auto ridge =
        make_separable({profiles::tanh_ridge(1.0, 0.5, {1.0, -2.0}), profiles::exponential(), profiles::cauchy()});
    for (const auto& model : {presets::exp(), presets::cauchy(), ridge, generic_copy(ridge)}) {
        const auto rep = check_layers(discretize(model, 8), 2000, 4);
        EXPECT_TRUE(rep.ok()) << rep.nonzero_at_origin << ' ' << rep.decreasing << ' ' << rep.v_lipschitz << ' '
                              << rep.u_lipschitz;
    }
}

TEST(Discretize, SeparableAndQuadratureRoutesAgree) {
    const auto ridge =
        make_separable({profiles::tanh_ridge(1.0, 0.5, {1.0, -2.0}), profiles::exponential(), profiles::cauchy()});
    const auto fast = discretize(ridge, 16);
    const auto slow = discretize(generic_copy(ridge), 16);
    for (std::size_t j = 0; j < 16; ++j) {
        EXPECT_NEAR(fast.mu()[j], slow.mu()[j], 1e-12);
        EXPECT_NEAR(fast.K()[j], slow.K()[j], 1e-12);
    }
    gen::Rng rng(41);
    for (int i = 0; i < 10; ++i) {
        const auto q = gen::random_step(rng, 2.0, 10, 30);
        const auto u = gen::random_param_on(rng, q.division(), 2, 1.0);
        const auto a = forward_eval(fast, u, q);
        const auto b = forward_eval(slow, u, q);
        EXPECT_LE(sup_norm(a - b), 1e-10);
    }
}

TEST(Forward, MatchesPlaySumOracle) {
    const auto model = presets::cauchy();
    const auto op = discretize(model, 8, 2.0);
    gen::Rng rng(43);
    for (int i = 0; i < 20; ++i) {
        const auto q = gen::random_step(rng, 3.0);
        const auto p = forward_eval(op, zero_param(q.division()), q);
        for (std::size_t n = 0; n < q.nodes(); ++n) {
            double expect = 0.0;
            for (std::size_t j = 0; j < 8; ++j) {
                const double r = op.thresholds()[j];
                const double w = std::exp(-(r - 0.25)) - std::exp(-r);
                expect += w * std::atan(oracle::play_at(q.values(), n, r));
            }
            ASSERT_NEAR(p[n], expect, 1e-13);
        }
    }
}

TEST(Forward, ZeroDensityAndZeroInput) {
    gen::Rng rng(47);
    const auto q = gen::random_step(rng, 3.0);
    const auto u = zero_param(q.division());
    const auto p0 = forward_eval(discretize(presets::zero(), 4), u, q);
    for (double v : p0.values()) EXPECT_EQ(v, 0.0);
    const auto z = make_step_signal({0, 0.5, 1}, {0, 0, 0});
    const auto pz = forward_eval(discretize(presets::cauchy(), 16), zero_param(z.division()), z);
    for (double v : pz.values()) EXPECT_EQ(v, 0.0);
}

TEST(Forward, RejectsDimensionMismatch) {
    const auto q = make_step_signal({0, 1}, {1, 1});
    EXPECT_THROW(forward_eval(discretize(presets::exp(), 4), zero_param(q.division(), 2), q), InvalidArgument);
}

TEST(Forward, LipschitzInInput) {
    const auto op = discretize(presets::cauchy(), 32);
    gen::Rng rng(53);
    for (int i = 0; i < 100; ++i) {
        const auto q1 = gen::random_step(rng, 1.9);
        const auto q2 = gen::random_step_on(rng, q1.division(), 1.9);
        const auto u = zero_param(q1.division());
        const auto d = forward_eval(op, u, q1) - forward_eval(op, u, q2);
        const auto dq = q1 - q2;
        double cum = 0.0;
        for (std::size_t n = 0; n < dq.nodes(); ++n) {
            cum = std::max(cum, std::abs(dq[n]));
            ASSERT_LE(std::abs(d[n]), op.sum_mu() * cum + 1e-13);
        }
    }
}

TEST(Forward, ApproximatesContinuousOperator) {
    const auto model = presets::cauchy();
    gen::Rng rng(59);
    for (int i = 0; i < 3; ++i) {
        const auto q = gen::random_step(rng, 1.9, 10, 15);
        const auto u = zero_param(q.division());
        for (std::size_t k : {4u, 16u, 64u}) {
            const auto p = forward_eval(discretize(model, k, 2.0), u, q);
            for (std::size_t n = 0; n < q.nodes(); n += 3) {
                const double exact = oracle::continuous_preisach(model, u.node(n), q.values(), n, 2.0);
                ASSERT_LE(std::abs(p[n] - exact), model.M * 2.0 / k + 1e-10) << "k = " << k << ", n = " << n;
            }
        }
    }
}

TEST(Forward, RefineErrorWithinRate) {
    const auto model = presets::exp();
    gen::Rng rng(61);
    const auto q = gen::random_step(rng, 2.0);
    const auto u = zero_param(q.division());
    for (std::size_t k : {4u, 16u, 64u}) {
        EXPECT_LE(refine_error(model, u, q, k, 1024), model.M * 2.0 / k + model.M * 2.0 / 1024);
    }
    EXPECT_EQ(refine_error(model, u, q, 8, 8), 0.0);
}

TEST(FromLayers, CustomOperator) {
    auto op = DiscretePreisach::from_layers({1.0}, {[](ParamView, double v) { return v; }}, {1.0}, {0.0});
    EXPECT_EQ(op.R(), 1.0);
    EXPECT_EQ(op.rho_k(), 2.0);
    const auto q = make_step_signal({0, 1, 2, 3}, {2, 0, 3, 3});
    const auto p = forward_eval(op, zero_param(q.division()), q);
    EXPECT_EQ(p.values(), (std::vector<double>{1, 1, 2, 2}));
    EXPECT_THROW(DiscretePreisach::from_layers({1.0, 0.5}, {[](ParamView, double v) { return v; },
                                                            [](ParamView, double v) { return v; }},
                                               {1.0, 1.0}, {0.0, 0.0}),
                 InvalidArgument);
}

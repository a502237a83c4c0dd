// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "preisach/config.hpp"
#include "preisach/density.hpp"
#include "preisach/discrete.hpp"
#include "preisach/inverse.hpp"
#include "preisach/piezo.hpp"
#include "preisach/play.hpp"
#include "preisach/random.hpp"
#include "preisach/signals.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace preisach;

namespace {

constexpr double kTol = 1e-10;

struct Result {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Result()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Result r;
    try {
        r = body();
    } catch (const std::exception& e) {
        r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!r.pass) ++failures;
    std::printf("%s criterion %d: %s | %s | %.2fs\n", r.pass ? "PASS" : "FAIL", id, title, r.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

ParamSignal zero_param(const std::vector<double>& d) { return ParamSignal::constant(d, std::vector<double>{0.0}); }

DensityModel with_ridge(const DensityModel& base, double a) {
    auto parts = *base.separable;
    parts.c = profiles::tanh_ridge(1.0, a, {1.0});
    return make_separable(std::move(parts));
}

Result brokate() {
    gen::Rng rng(1001);
    std::uniform_real_distribution<double> ur(0.0, 3.0);
    double worst = 0.0;
    std::size_t sign_violations = 0, jumps = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto q = gen::random_step(rng, 5.0, 1, 100);
        double rho = 0.0, sigma = 0.0;
        while (rho == 0.0) rho = 3.0 - ur(rng);  // (0, 3]
        while (sigma == 0.0) sigma = 3.0 - ur(rng);
        const auto xi = play_trajectory(q, rho);
        const auto eta = play_trajectory(xi, sigma);
        const auto direct = play_trajectory(q, rho + sigma);
        worst = std::max(worst, sup_norm(eta - direct));
        for (std::size_t n = 1; n < q.nodes(); ++n) {
            const double de = eta[n] - eta[n - 1];
            if (de == 0.0) continue;
            ++jumps;
            if (!((xi[n] - xi[n - 1]) * de > 0.0)) ++sign_violations;
        }
    }
    return {worst <= 1e-12 && sign_violations == 0,
            fmt("max |p_s(p_r q) - p_(r+s) q| = %.3g, sign implication violated at %.0f", worst,
                static_cast<double>(sign_violations)) +
                " of " + std::to_string(jumps) + " jumps"};
}

Result play_lipschitz() {
    gen::Rng rng(1002);
    std::uniform_real_distribution<double> ur(0.0, 3.0);
    double worst_lip = -kInfinity, worst_thr = -kInfinity;
    for (int i = 0; i < 1000; ++i) {
        const auto q1 = gen::random_step(rng, 5.0, 1, 100);
        const auto q2 = gen::random_step(rng, 5.0, 1, 100);
        const auto m = merge_divisions(q1, q2);
        const double r = 3.0 - ur(rng);
        const double r2 = r + (3.0 - ur(rng));
        const auto x1 = play_trajectory(m.first, r), x2 = play_trajectory(m.second, r);
        const auto y1 = play_trajectory(m.first, r2);
        double cum = 0.0;
        for (std::size_t n = 0; n < m.division.size(); ++n) {
            cum = std::max(cum, std::abs(m.first[n] - m.second[n]));
            worst_lip = std::max(worst_lip, std::abs(x1[n] - x2[n]) - cum);
            worst_thr = std::max(worst_thr, std::abs(y1[n] - x1[n]) - (r2 - r));
        }
    }
    return {worst_lip <= 1e-12 && worst_thr <= 1e-12,
            fmt("max excess over |q1-q2|_[0,t] = %.3g, over r2-r1 = %.3g", worst_lip, worst_thr)};
}

Result residual_certificate() {
    gen::Rng rng(1003);
    const DensityModel models[] = {presets::exp(), presets::cauchy(), with_ridge(presets::exp(), 0.5),
                                   with_ridge(presets::cauchy(), 0.5)};
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const auto& model = models[i % 4];
        const std::size_t k = (i / 4) % 2 == 0 ? 8 : 64;
        const auto w = gen::random_step(rng, 5.0);
        const auto u = gen::random_param_on(rng, w.division(), 1, 1.0);
        const auto op = discretize(model, k, inversion_radius(model.M, w));
        const auto inv = invert(op, u, w, kTol);
        worst = std::max(worst, sup_norm(forward_apply(op, u, inv.q) - w));
    }
    return {worst <= 1e-10, fmt("max |q + P_k(u)[q] - w| = %.3g over 500 inversions", worst)};
}

Result roundtrip() {
    gen::Rng rng(1004);
    const DensityModel models[] = {presets::exp(), presets::cauchy(), with_ridge(presets::cauchy(), 0.5)};
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const auto& model = models[i % 3];
        const auto op = discretize(model, 64);
        const auto q = gen::random_step(rng, op.R());
        const auto u = gen::random_param_on(rng, q.division(), 1, 1.0);
        const auto back = invert(op, u, forward_apply(op, u, q), kTol).q;
        worst = std::max(worst, sup_norm(back - q));
    }
    return {worst <= 1e-9, fmt("max |invert(forward(q)) - q| = %.3g", worst)};
}

struct StabilityTotals {
    double slack_rho = kInfinity;
    double slack_eM = kInfinity;
};

StabilityTotals stability_pairs() {
    gen::Rng rng(1005);
    const DensityModel models[] = {with_ridge(presets::cauchy(), 0.5), presets::exp()};
    StabilityTotals t;
    for (int i = 0; i < 200; ++i) {
        const auto& model = models[i % 2];
        const auto w = gen::random_step(rng, 3.0);
        const auto u = gen::random_param_on(rng, w.division(), 1, 1.0);
        const auto wh = gen::perturb(rng, w, 0.5);
        const auto uh = gen::perturb(rng, u, 0.5);
        const auto op = discretize(model, 32, inversion_radius(model.M, w, wh));
        const auto rep = stability_check(op, u, w, uh, wh, kTol);
        t.slack_rho = std::min(t.slack_rho, rep.min_slack_rho);
        t.slack_eM = std::min(t.slack_eM, rep.min_slack_eM);
    }
    return t;
}

Result discrete_lipschitz(const StabilityTotals& t) {
    return {t.slack_rho >= 0.0, fmt("min slack of rho_k(|w-w^|+sum K_j |u-u^|) + 2 tol = %.3g", t.slack_rho)};
}

Result main_bound(const StabilityTotals& t) {
    double worst = -kInfinity;
    for (const auto& model : {presets::exp(), presets::cauchy(), with_ridge(presets::cauchy(), 0.5)}) {
        for (std::size_t k = 1; k <= 256; ++k) {
            worst = std::max(worst, discretize(model, k).rho_k() - std::exp(model.M));
        }
    }
    return {t.slack_eM >= 0.0 && worst <= 0.0,
            fmt("min slack of e^M(|w-w^|+M1 |u-u^|) + 2 tol = %.3g, max rho_k - e^M over k<=256 = %.3g", t.slack_eM,
                worst)};
}

Result discretization_error() {
    const auto model = presets::exp();
    const double R = 2.0;
    const std::size_t ks[] = {4, 16, 64, 256};
    const std::size_t k_ref = 4096;
    gen::Rng rng(1007);
    std::vector<StepSignal> qs;
    for (int i = 0; i < 100; ++i) qs.push_back(gen::random_step(rng, R));
    const auto ref_op = discretize(model, k_ref, R);
    std::vector<StepSignal> refs;
    for (const auto& q : qs) refs.push_back(forward_eval(ref_op, zero_param(q.division()), q));

    bool ok = true;
    double prev = kInfinity;
    std::string detail;
    for (std::size_t k : ks) {
        const auto op = discretize(model, k, R);
        const double bound = model.M * R / k + model.M * R / k_ref;
        double gap = 0.0;
        for (std::size_t i = 0; i < qs.size(); ++i) {
            const double g = sup_norm(forward_eval(op, zero_param(qs[i].division()), qs[i]) - refs[i]);
            ok = ok && g <= bound;
            gap = std::max(gap, g);
        }
        ok = ok && gap <= prev + 1e-9;
        prev = gap;
        detail += (detail.empty() ? "" : ", ") + fmt("k=%.0f gap %.3g", static_cast<double>(k), gap) +
                  fmt(" <= %.3g", bound);
    }
    return {ok, detail};
}

Result regularity() {
    gen::Rng rng(1008);
    const auto model = with_ridge(presets::cauchy(), 0.5);
    double slack = kInfinity, agree_slack = kInfinity;
    for (int i = 0; i < 20; ++i) {
        const auto wc = gen::random_curve(rng, 1.0);
        const auto uc = gen::random_curve(rng, 1.0);
        const auto dc = uniform_division(1.0, 100);
        const auto df = uniform_division(1.0, 1000);
        auto u_of = [&](double t) { return std::vector<double>{uc(t)}; };
        const auto wcs = sample(wc, dc), wfs = sample(wc, df);
        const auto ucs = sample_param(u_of, dc, 1), ufs = sample_param(u_of, df, 1);
        const auto op = discretize(model, 32, inversion_radius(model.M, wcs, wfs));
        const auto coarse = regularity_check(op, ucs, wcs, kTol);
        const auto fine = regularity_check(op, ufs, wfs, kTol);
        slack = std::min({slack, coarse.min_slack, fine.min_slack});
        const double h = 1e-2;
        const double bound = std::exp(model.M) * h * (1.0 + model.M1) + 2.0 * kTol;
        agree_slack = std::min(agree_slack, bound - agreement_at_nodes(coarse.q, fine.q));
    }
    return {slack >= 0.0 && agree_slack >= 0.0,
            fmt("min oscillation-bound slack = %.3g, min mesh-agreement slack = %.3g", slack, agree_slack)};
}

Result piezo_reduction() {
    gen::Rng rng(1009);
    piezo::PiezoConfig zero;
    zero.f = config::polynomial({1.0, 0.0, 1.0});
    zero.alpha = config::polynomial({0.0});
    zero.f_min = 1.0;
    zero.coeff_max = 0.0;
    zero.coeff_lip = 0.0;
    zero.density = presets::exp();
    double exact_gap = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto E = gen::random_step(rng, 3.0);
        const auto eps = gen::random_step_on(rng, E.division(), 1.0);
        const auto theta = gen::random_step_on(rng, E.division(), 1.0);
        const auto sol = piezo::solve(zero, E, eps, theta, 32, kTol);
        for (std::size_t n = 0; n < E.nodes(); ++n) {
            exact_gap = std::max(exact_gap, std::abs(sol.q[n] - E[n] / zero.f(eps[n])));
        }
    }

    auto cfg = zero;
    cfg.alpha = config::polynomial({0.1});  // alpha / f = 0.1 / (1 + eps^2)
    cfg.coeff_max = 0.1;
    cfg.coeff_lip = 0.1 * 3.0 * std::sqrt(3.0) / 8.0;
    const double delta = 0.05;
    double slack = kInfinity;
    for (int i = 0; i < 100; ++i) {
        const auto E = gen::random_step(rng, 3.0);
        const auto Eh = gen::perturb(rng, E, delta);
        const auto eps = gen::random_step_on(rng, E.division(), 1.0);
        const auto theta = gen::random_step_on(rng, E.division(), 1.0);
        const double R = std::exp(0.1) * std::max(sup_norm(E), sup_norm(Eh));
        const auto a = piezo::solve(cfg, E, eps, theta, 64, kTol, R);
        const auto b = piezo::solve(cfg, Eh, eps, theta, 64, kTol, R);
        const double bound = std::exp(0.1) * delta / cfg.f_min + 2.0 * kTol;
        slack = std::min(slack, bound - sup_norm(a.q - b.q));
    }
    return {exact_gap <= 1e-12 && slack >= 0.0,
            fmt("alpha=0 max |q - E/f| = %.3g, min perturbation slack = %.3g", exact_gap, slack)};
}

} // namespace

int main() {
    report(1, "play composition identity and sign implication", brokate);
    report(2, "play Lipschitz and threshold bounds", play_lipschitz);
    report(3, "inversion residual certificate", residual_certificate);
    report(4, "roundtrip uniqueness", roundtrip);
    StabilityTotals totals;
    bool have_totals = false;
    auto ensure = [&] {
        if (!have_totals) totals = stability_pairs();
        have_totals = true;
    };
    report(5, "discrete Lipschitz and parameter bound", [&] {
        ensure();
        return discrete_lipschitz(totals);
    });
    report(6, "limit bound e^M and rho_k <= e^M", [&] {
        ensure();
        return main_bound(totals);
    });
    report(7, "discretization error M R / k", discretization_error);
    report(8, "regularity for Lipschitz inputs", regularity);
    report(9, "piezo reduction and field stability", piezo_reduction);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}

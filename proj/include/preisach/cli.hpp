#pragma once

// Command dispatch for the preisach command-line tool. Argument parsing
// lives in tools/; this header maps a RunConfig onto library calls and the
// exit-code contract:
//   0  success, every asserted bound holds
//   1  a bound was violated
//   2  bad input (parse error, unreadable file, empty output path)
//   3  numerical failure (quadrature or root finding)

#include "preisach/config.hpp"
#include "preisach/csv.hpp"
#include "preisach/density.hpp"
#include "preisach/discrete.hpp"
#include "preisach/error.hpp"
#include "preisach/inverse.hpp"
#include "preisach/log.hpp"
#include "preisach/piezo.hpp"
#include "preisach/random.hpp"
#include "preisach/signals.hpp"

#include <cmath>
#include <future>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace preisach::cli {

enum ExitCode : int { kOk = 0, kBoundViolated = 1, kBadInput = 2, kNumerical = 3 };

struct RunConfig {
    std::string command;
    std::string model;        ///< density JSON; empty = "exp" preset
    std::string piezo_config; ///< piezo JSON (piezo command)
    std::size_t k = 64;
    double tol = kDefaultTolerance;
    std::uint64_t seed = 42;
    std::vector<std::string> inputs;
    std::string output;
    std::string report;       ///< optional summary file for `invert`
    std::optional<double> R;
    std::vector<std::size_t> ks{4, 16, 64, 256};
    std::size_t k_ref = 4096;
    std::size_t trials = 100;
};

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> names{"forward",     "invert",     "roundtrip", "stability",
                                                "error-study", "regularity", "piezo"};
    return names;
}

struct Outcome {
    int code = kOk;
    std::string message;
};

namespace detail {

inline DensityModel load_model(const RunConfig& cfg) {
    return cfg.model.empty() ? presets::exp() : config::load_model(cfg.model);
}

inline void require_inputs(const RunConfig& cfg, std::size_t min, std::size_t max, const char* what) {
    if (cfg.inputs.size() < min || cfg.inputs.size() > max) throw ParseError(std::string("expected ") + what);
}

inline ParamSignal zero_param(const std::vector<double>& division, std::size_t dim) {
    return ParamSignal(division, dim, std::vector<double>(division.size() * dim, 0.0));
}

// Rounding allowance for comparisons of recomputed quantities.
inline double rounding(double scale) { return 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + scale); }

inline Outcome forward(const RunConfig& cfg) {
    require_inputs(cfg, 1, 2, "--in q.csv [u.csv]");
    const auto model = load_model(cfg);
    const auto q = csv::load_step_signal(cfg.inputs[0]);
    const auto u = cfg.inputs.size() > 1 ? csv::load_param_signal(cfg.inputs[1])
                                         : zero_param(q.division(), model.param_dim);
    const auto op = discretize(model, cfg.k, cfg.R);
    const auto w = forward_apply(op, u, q);
    csv::save(cfg.output, [&](std::ostream& os) { csv::write_step_signal(os, w); });
    return {};
}

inline Outcome invert_cmd(const RunConfig& cfg) {
    require_inputs(cfg, 1, 2, "--in w.csv [u.csv]");
    const auto model = load_model(cfg);
    const auto w = csv::load_step_signal(cfg.inputs[0]);
    const auto u = cfg.inputs.size() > 1 ? csv::load_param_signal(cfg.inputs[1])
                                         : zero_param(w.division(), model.param_dim);
    double R = cfg.R.value_or(inversion_radius(model.M, w));
    if (!(R > 0.0)) R = model.support_R;
    const auto op = discretize(model, cfg.k, R);
    const auto rep = invert(op, u, w, cfg.tol);
    csv::save(cfg.output, [&](std::ostream& os) { csv::write_step_signal(os, rep.q); });

    csv::Table summary{{"residual_sup", "rho_k", "eM", "k", "R", "tol"},
                       {{rep.residual_sup, rep.rho_k, rep.bound_eM, static_cast<double>(cfg.k), R, cfg.tol}}};
    csv::write_table(std::cout, summary);
    if (!cfg.report.empty()) csv::save(cfg.report, [&](std::ostream& os) { csv::write_table(os, summary); });
    return {};
}

inline Outcome roundtrip(const RunConfig& cfg) {
    const auto model = load_model(cfg);
    const auto op = discretize(model, cfg.k, cfg.R);
    gen::Rng rng(cfg.seed);
    csv::Table table{{"trial", "N", "roundtrip_error", "rho_k_tol_bound"}, {}};
    double worst = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < cfg.trials; ++i) {
        const auto q = gen::random_step(rng, op.R());
        const auto u = gen::random_param_on(rng, q.division(), model.param_dim, 1.0);
        const auto w = forward_apply(op, u, q);
        const auto back = invert(op, u, w, cfg.tol).q;
        const double err = sup_norm(back - q);
        const double bound = op.rho_k() * cfg.tol + rounding(sup_norm(w));
        worst = std::max(worst, err);
        ok = ok && err <= bound;
        table.rows.push_back({static_cast<double>(i), static_cast<double>(q.steps()), err, bound});
    }
    csv::save(cfg.output, [&](std::ostream& os) { csv::write_table(os, table); });
    std::cout << "max_roundtrip_error," << csv::format_double(worst) << '\n';
    if (!ok) return {kBoundViolated, "roundtrip error exceeds rho_k * tol"};
    return {};
}

inline Outcome stability(const RunConfig& cfg) {
    const auto model = load_model(cfg);
    csv::Table table{{"trial", "t", "diff", "dw", "du", "rho_k_bound", "eM_bound"}, {}};
    bool ok = true;
    auto run_pair = [&](std::size_t trial, const ParamSignal& u, const StepSignal& w, const ParamSignal& uh,
                        const StepSignal& wh) {
        double R = cfg.R.value_or(inversion_radius(model.M, w, wh));
        if (!(R > 0.0)) R = model.support_R;
        const auto op = discretize(model, cfg.k, R);
        const auto rep = stability_check(op, u, w, uh, wh, cfg.tol);
        for (const auto& r : rep.rows) {
            table.rows.push_back({static_cast<double>(trial), r.t, r.diff, r.dw, r.du, r.rho_bound, r.eM_bound});
        }
        ok = ok && rep.ok();
    };
    if (!cfg.inputs.empty()) {
        if (cfg.inputs.size() != 2 && cfg.inputs.size() != 4) {
            throw ParseError("expected --in w.csv w_hat.csv [u.csv u_hat.csv]");
        }
        const auto w = csv::load_step_signal(cfg.inputs[0]);
        const auto wh = csv::load_step_signal(cfg.inputs[1]);
        const auto u = cfg.inputs.size() == 4 ? csv::load_param_signal(cfg.inputs[2])
                                              : zero_param(w.division(), model.param_dim);
        const auto uh = cfg.inputs.size() == 4 ? csv::load_param_signal(cfg.inputs[3])
                                               : zero_param(wh.division(), model.param_dim);
        run_pair(0, u, w, uh, wh);
    } else {
        gen::Rng rng(cfg.seed);
        for (std::size_t i = 0; i < cfg.trials; ++i) {
            const auto w = gen::random_step(rng, 3.0);
            const auto u = gen::random_param_on(rng, w.division(), model.param_dim, 1.0);
            const auto wh = gen::perturb(rng, w, 0.5);
            const auto uh = gen::perturb(rng, u, 0.5);
            run_pair(i, u, w, uh, wh);
        }
    }
    csv::save(cfg.output, [&](std::ostream& os) { csv::write_table(os, table); });
    if (!ok) return {kBoundViolated, "stability bound violated"};
    return {};
}

inline Outcome error_study(const RunConfig& cfg) {
    const auto model = load_model(cfg);
    const double R = cfg.R.value_or(model.support_R);
    gen::Rng rng(cfg.seed);
    std::vector<StepSignal> qs;
    std::vector<ParamSignal> us;
    for (std::size_t i = 0; i < cfg.trials; ++i) {
        qs.push_back(gen::random_step(rng, R));
        us.push_back(gen::random_param_on(rng, qs.back().division(), model.param_dim, 1.0));
    }
    const auto ref_op = discretize(model, cfg.k_ref, R);
    std::vector<StepSignal> refs;
    for (std::size_t i = 0; i < qs.size(); ++i) refs.push_back(forward_eval(ref_op, us[i], qs[i]));

    std::vector<std::future<double>> jobs;
    for (std::size_t k : cfg.ks) {
        jobs.push_back(std::async(std::launch::async, [&, k] {
            const auto op = discretize(model, k, R);
            double worst = 0.0;
            for (std::size_t i = 0; i < qs.size(); ++i) {
                worst = std::max(worst, sup_norm(forward_eval(op, us[i], qs[i]) - refs[i]));
            }
            return worst;
        }));
    }
    csv::Table table{{"k", "sup_error", "MR_over_k", "bound"}, {}};
    bool ok = true;
    for (std::size_t i = 0; i < cfg.ks.size(); ++i) {
        const double k = static_cast<double>(cfg.ks[i]);
        const double err = jobs[i].get();
        const double mrk = model.M * R / k;
        const double bound = mrk + model.M * R / static_cast<double>(cfg.k_ref);
        ok = ok && err <= bound;
        table.rows.push_back({k, err, mrk, bound});
    }
    csv::save(cfg.output, [&](std::ostream& os) { csv::write_table(os, table); });
    if (!ok) return {kBoundViolated, "discretization error exceeds M R / k + M R / k_ref"};
    return {};
}

inline Outcome regularity(const RunConfig& cfg) {
    const auto model = load_model(cfg);
    csv::Table table{{"h", "t0", "dq", "eM_bound"}, {}};
    bool ok = true;
    auto append = [&](const RegularityReport& rep) {
        for (const auto& r : rep.rows) table.rows.push_back({r.h, r.t0, r.dq, r.bound});
        ok = ok && rep.ok();
    };
    if (!cfg.inputs.empty()) {
        require_inputs(cfg, 1, 2, "--in w.csv [u.csv]");
        const auto w = csv::load_step_signal(cfg.inputs[0]);
        const auto u = cfg.inputs.size() > 1 ? csv::load_param_signal(cfg.inputs[1])
                                             : zero_param(w.division(), model.param_dim);
        double R = cfg.R.value_or(inversion_radius(model.M, w));
        if (!(R > 0.0)) R = model.support_R;
        append(regularity_check(discretize(model, cfg.k, R), u, w, cfg.tol));
    } else {
        gen::Rng rng(cfg.seed);
        const auto wc = gen::random_curve(rng, 1.0);
        std::vector<gen::LipschitzCurve> uc;
        for (std::size_t l = 0; l < model.param_dim; ++l) uc.push_back(gen::random_curve(rng, 1.0));
        auto u_of = [&](double t) {
            std::vector<double> v;
            for (const auto& c : uc) v.push_back(c(t));
            return v;
        };
        const std::size_t coarse_n = 100, fine_n = 1000;
        const auto dc = uniform_division(1.0, coarse_n);
        const auto df = uniform_division(1.0, fine_n);
        const auto wcs = sample(wc, dc), wfs = sample(wc, df);
        const auto ucs = sample_param(u_of, dc, model.param_dim), ufs = sample_param(u_of, df, model.param_dim);
        double R = cfg.R.value_or(inversion_radius(model.M, wcs, wfs));
        if (!(R > 0.0)) R = model.support_R;
        const auto op = discretize(model, cfg.k, R);
        const auto coarse = regularity_check(op, ucs, wcs, cfg.tol);
        const auto fine = regularity_check(op, ufs, wfs, cfg.tol);
        append(coarse);
        append(fine);
        // Lipschitz-1 curves in every component: |u| has Lipschitz constant sqrt(L).
        const double h = 1.0 / static_cast<double>(coarse_n);
        const double lip_u = std::sqrt(static_cast<double>(model.param_dim));
        const double gap = agreement_at_nodes(coarse.q, fine.q);
        const double bound = std::exp(model.M) * h * (1.0 + product_0inf(model.M1, lip_u)) + 2.0 * cfg.tol;
        std::cout << "mesh_agreement," << csv::format_double(gap) << ",bound," << csv::format_double(bound) << '\n';
        ok = ok && gap <= bound;
    }
    csv::save(cfg.output, [&](std::ostream& os) { csv::write_table(os, table); });
    if (!ok) return {kBoundViolated, "regularity bound violated"};
    return {};
}

inline Outcome piezo_cmd(const RunConfig& cfg) {
    require_inputs(cfg, 3, 3, "--in E.csv eps.csv theta.csv");
    const std::string path = cfg.piezo_config.empty() ? cfg.model : cfg.piezo_config;
    if (path.empty()) throw ParseError("piezo needs --config <piezo.json>");
    const auto pc = config::piezo_from_json(config::load_json(path));
    const auto E = csv::load_step_signal(cfg.inputs[0]);
    const auto eps = csv::load_step_signal(cfg.inputs[1]);
    const auto theta = csv::load_step_signal(cfg.inputs[2]);
    const auto sol = piezo::solve(pc, E, eps, theta, cfg.k, cfg.tol, cfg.R);
    csv::Table table{{"t", "q", "P"}, {}};
    for (std::size_t n = 0; n < sol.q.nodes(); ++n) table.rows.push_back({sol.q.division()[n], sol.q[n], sol.polarization[n]});
    csv::save(cfg.output, [&](std::ostream& os) { csv::write_table(os, table); });
    std::cout << "residual," << csv::format_double(sol.residual) << '\n';
    if (sol.residual > cfg.tol / pc.f_min + rounding(sup_norm(sol.w))) {
        return {kBoundViolated, "constitutive-law residual above tol / f_min"};
    }
    return {};
}

} // namespace detail

/// Execute one command; never throws.
inline Outcome run(const RunConfig& cfg) {
    try {
        if (cfg.output.empty()) throw ParseError("--out is required");
        if (cfg.k == 0) throw ParseError("--k must be at least 1");
        if (!(cfg.tol > 0.0)) throw ParseError("--tol must be positive");
        if (cfg.command == "forward") return detail::forward(cfg);
        if (cfg.command == "invert") return detail::invert_cmd(cfg);
        if (cfg.command == "roundtrip") return detail::roundtrip(cfg);
        if (cfg.command == "stability") return detail::stability(cfg);
        if (cfg.command == "error-study") return detail::error_study(cfg);
        if (cfg.command == "regularity") return detail::regularity(cfg);
        if (cfg.command == "piezo") return detail::piezo_cmd(cfg);
        throw ParseError("unknown command '" + cfg.command + "'");
    } catch (const NumericalError& e) {
        return {kNumerical, e.what()};
    } catch (const ParseError& e) {
        return {kBadInput, e.what()};
    } catch (const InvalidArgument& e) {
        return {kBadInput, e.what()};
    } catch (const std::exception& e) {
        return {kBadInput, e.what()};
    }
}

} // namespace preisach::cli

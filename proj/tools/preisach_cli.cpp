#include "CLI11.hpp"

#include "preisach/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    using preisach::cli::RunConfig;

    CLI::App app{"Evaluate and invert parameter-dependent Preisach operators on step signals"};
    RunConfig cfg;
    double R = 0.0;

    app.add_option("command", cfg.command, "forward | invert | roundtrip | stability | error-study | regularity | piezo")
        ->required()
        ->check(CLI::IsMember(preisach::cli::commands()));
    app.add_option("--model", cfg.model, "density model JSON (default: exp preset)");
    app.add_option("--config", cfg.piezo_config, "piezo configuration JSON");
    app.add_option("--k", cfg.k, "number of memory layers")->check(CLI::PositiveNumber);
    app.add_option("--tol", cfg.tol, "residual tolerance")->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "seed for randomized suites");
    app.add_option("--in", cfg.inputs, "input CSV files");
    app.add_option("--out", cfg.output, "output CSV path")->required();
    app.add_option("--report", cfg.report, "summary CSV for invert");
    auto* r_opt = app.add_option("--R", R, "truncation radius")->check(CLI::PositiveNumber);
    app.add_option("--ks", cfg.ks, "layer counts for error-study")->delimiter(',');
    app.add_option("--kref", cfg.k_ref, "reference layer count for error-study")->check(CLI::PositiveNumber);
    app.add_option("--trials", cfg.trials, "random trials for randomized suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return preisach::cli::kBadInput;
    }
    if (*r_opt) cfg.R = R;

    const auto outcome = preisach::cli::run(cfg);
    if (outcome.code != preisach::cli::kOk) std::cerr << "preisach: " << outcome.message << '\n';
    return outcome.code;
}

#include <iostream>

#include "CLI11.hpp"
#include "lrv/cli/commands.hpp"

int main(int argc, char** argv) {
    using namespace lrv::cli;

    CLI::App app{"Long-run variance estimation: block subsampling, kernel and rank estimators"};
    app.set_version_flag("--version", tool_version());
    app.require_subcommand(1);

    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "Write a simulated ARMA(1,1) path as CSV");
    simulate->add_option("--ar", sim.ar, "AR(1) coefficient, |ar| < 1");
    simulate->add_option("--ma", sim.ma, "MA(1) coefficient");
    simulate->add_option("--sd", sim.innovation_sd, "Innovation standard deviation");
    simulate->add_option("--n", sim.n, "Series length")->capture_default_str();
    simulate->add_option("--burn-in", sim.burn_in, "Discarded leading values")->capture_default_str();
    simulate->add_option("--seed", sim.seed, "64-bit seed");
    simulate->add_option("--out", sim.out, "Output CSV (default: stdout)");

    EstimateOptions est;
    auto* estimate = app.add_subcommand("estimate", "Apply one estimator to a series CSV");
    estimate->add_option("input", est.input, "Series CSV (header required)")->required();
    estimate->add_option("--estimator", est.estimator, "bhat | carlstein | overlap | jde | dhat | pse")
        ->required();
    estimate->add_option("--param", est.param, "Block length, bandwidth, or 'adaptive'")
        ->capture_default_str();
    estimate->add_option("--power", est.power, "Power p for the overlap estimator")->capture_default_str();
    estimate->add_flag("--split-half", est.split_half, "Average the estimator over the two halves");

    StudyOptions study;
    std::uint64_t seed = 0;
    std::size_t replications = 0;
    auto* study_cmd = app.add_subcommand("study", "Run Monte Carlo bias/variance/MSE experiments");
    study_cmd->add_option("--config", study.config, "INI or JSON config (default: bundled part1+part2)");
    study_cmd->add_option("--out", study.out_dir, "Output directory")->capture_default_str();
    auto* seed_opt = study_cmd->add_option("--seed", seed, "Override every experiment's master seed");
    auto* reps_opt = study_cmd->add_option("--replications", replications, "Override replications")
                         ->check(CLI::PositiveNumber);
    study_cmd->add_option("--threads", study.threads, "Worker threads (0 = all cores)");

    HlTestOptions hl;
    auto* hltest = app.add_subcommand("hltest", "Studentized two-sample Hodges-Lehmann test");
    hltest->add_option("first", hl.first, "Series CSV before the change point")->required();
    hltest->add_option("second", hl.second, "Series CSV after the change point")->required();

    CLI11_PARSE(app, argc, argv);

    if (*seed_opt) {
        study.seed = seed;
    }
    if (*reps_opt) {
        study.replications = replications;
    }
    if (*simulate) {
        return cmd_simulate(sim, std::cout, std::cerr);
    }
    if (*estimate) {
        return cmd_estimate(est, std::cout, std::cerr);
    }
    if (*study_cmd) {
        return cmd_study(study, std::cout, std::cerr);
    }
    return cmd_hltest(hl, std::cout, std::cerr);
}

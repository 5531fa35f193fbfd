#include "lrv/cli/commands.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "lrv/changepoint.hpp"
#include "lrv/cli/config.hpp"
#include "lrv/cli/csv.hpp"
#include "lrv/harness.hpp"
#include "lrv/process_sim.hpp"

namespace lrv::cli {

using nlohmann::json;

const char* tool_version() noexcept { return LRV_VERSION; }

namespace {

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string with_12_digits(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        const ArmaSpec spec(opt.ar, opt.ma, opt.innovation_sd);
        if (opt.n == 0) {
            err << "simulate: --n must be at least 1\n";
            return kExitUsage;
        }
        const Series series = simulate_arma(spec, SimConfig{opt.n, opt.burn_in, opt.seed});
        std::vector<double> values(series.values().begin(), series.values().end());
        if (opt.out.empty()) {
            write_series_csv(out, values);
            return kExitOk;
        }
        std::ofstream file(opt.out, std::ios::binary);
        if (!file) {
            err << "simulate: cannot write '" << opt.out << "'\n";
            return kExitFailure;
        }
        write_series_csv(file, values);
        return file ? kExitOk : kExitFailure;
    } catch (const std::exception& e) {
        err << "simulate: " << e.what() << '\n';
        return kExitFailure;
    }
}

int cmd_estimate(const EstimateOptions& opt, std::ostream& out, std::ostream& err) {
    const auto id = parse_estimator(opt.estimator);
    if (!id) {
        err << "estimate: unknown estimator '" << opt.estimator
            << "' (expected bhat, carlstein, overlap, jde, dhat or pse)\n";
        return kExitUsage;
    }
    const auto param = parse_smoothing_param(opt.param);
    if (!param) {
        err << "estimate: --param must be a positive number or 'adaptive', got '" << opt.param << "'\n";
        return kExitUsage;
    }
    try {
        const Series series(read_series_file(opt.input));
        const GridEntry entry{*id, *param};
        const Evaluation ev = opt.split_half ? split_half_estimate(series, entry, opt.power)
                                             : evaluate_estimator(series, entry, opt.power);
        out << with_12_digits(ev.value) << '\n';
        return kExitOk;
    } catch (const std::exception& e) {
        err << "estimate: " << e.what() << '\n';
        return kExitFailure;
    }
}

int cmd_study(const StudyOptions& opt, std::ostream& out, std::ostream& err) {
    std::vector<ExperimentConfig> experiments;
    try {
        experiments = opt.config.empty() ? parse_ini_config(default_config_text())
                                         : load_config(opt.config);
        for (ExperimentConfig& cfg : experiments) {
            if (opt.seed) {
                cfg.master_seed = *opt.seed;
            }
            if (opt.replications) {
                cfg.replications = *opt.replications;
            }
            cfg.validate();
        }
        std::filesystem::create_directories(opt.out_dir);
    } catch (const std::exception& e) {
        err << "study: " << e.what() << '\n';
        return kExitUsage;
    }

    int status = kExitOk;
    for (const ExperimentConfig& cfg : experiments) {
        ExperimentResult result;
        try {
            result = run_experiment(cfg, opt.threads);
        } catch (const std::exception& e) {
            err << "study: experiment '" << cfg.name << "': " << e.what() << '\n';
            return kExitFailure;
        }
        const std::filesystem::path dir(opt.out_dir);
        const auto csv_path = dir / (cfg.name + ".csv");
        const auto manifest_path = dir / (cfg.name + ".manifest.json");

        std::ofstream csv(csv_path, std::ios::binary);
        write_results_csv(csv, result.records);

        json errors = json::array();
        for (const CellError& e : result.errors) {
            errors.push_back({{"spec_id", e.spec_id},
                              {"estimator", std::string(to_string(e.entry.estimator))},
                              {"parameter", to_string(e.entry.param)},
                              {"message", e.message}});
            err << "study: " << cfg.name << " spec " << e.spec_id << ' ' << to_string(e.entry.estimator)
                << ' ' << to_string(e.entry.param) << ": " << e.message << '\n';
            status = kExitCellErrors;
        }
        const json manifest = {
            {"tool", "lrv"},
            {"version", tool_version()},
            {"config_path", opt.config.empty() ? "<bundled default>" : opt.config},
            {"master_seed", cfg.master_seed},
            {"timestamp_utc", utc_timestamp()},
            {"results", csv_path.filename().string()},
            {"cell_errors", errors},
            {"experiments", json::array({to_json(cfg)})},
        };
        std::ofstream(manifest_path, std::ios::binary) << manifest.dump(2) << '\n';
        if (!csv) {
            err << "study: failed writing " << csv_path.string() << '\n';
            return kExitFailure;
        }
        out << cfg.name << ": " << result.records.size() << " rows -> " << csv_path.string() << '\n';
    }
    return status;
}

int cmd_hltest(const HlTestOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        const TwoSample sample{Series(read_series_file(opt.first)), Series(read_series_file(opt.second))};
        const HlTestReport r = hl_test(sample);
        const json report = {
            {"n1", sample.x.size()},
            {"n2", sample.y.size()},
            {"hodges_lehmann", r.q},
            {"sigma_F_hat", r.sigma_F_hat},
            {"h_prime_0", r.h_prime_0},
            {"statistic", r.statistic},
            {"p_value", r.p_value},
        };
        out << report.dump(2) << '\n';
        return kExitOk;
    } catch (const std::exception& e) {
        err << "hltest: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace lrv::cli

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace lrv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
/// The study ran, but at least one cell produced no record.
inline constexpr int kExitCellErrors = 3;

[[nodiscard]] const char* tool_version() noexcept;

struct SimulateOptions {
    double ar = 0.0;
    double ma = 0.0;
    double innovation_sd = 1.0;
    std::size_t n = 500;
    std::size_t burn_in = 1000;
    std::uint64_t seed = 0;
    std::string out;  ///< empty: write to `out` stream
};

struct EstimateOptions {
    std::string input;
    std::string estimator;
    std::string param = "adaptive";
    double power = 2.0;
    bool split_half = false;
};

struct StudyOptions {
    std::string config;  ///< empty: bundled default
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> replications;
    unsigned threads = 0;
};

struct HlTestOptions {
    std::string first;
    std::string second;
};

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err);
int cmd_estimate(const EstimateOptions& opt, std::ostream& out, std::ostream& err);
int cmd_study(const StudyOptions& opt, std::ostream& out, std::ostream& err);
int cmd_hltest(const HlTestOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace lrv::cli

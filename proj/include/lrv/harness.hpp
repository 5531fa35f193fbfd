#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lrv/process_sim.hpp"

namespace lrv {

enum class EstimatorId {
    Bhat,       ///< non-overlapping block estimator of sigma
    Carlstein,  ///< non-overlapping block estimator of sigma^2
    Overlap,    ///< overlapping block estimator of sigma^p on the raw data
    Jde,        ///< Bartlett-kernel HAC estimator of sigma^2
    Dhat,       ///< rank-based block estimator of sigma_F
    Pse,        ///< overlapping block estimator (p = 2) on ECDF values, estimates sigma_F^2
};

[[nodiscard]] std::string_view to_string(EstimatorId id) noexcept;
[[nodiscard]] std::optional<EstimatorId> parse_estimator(std::string_view name) noexcept;

/// True for estimators whose natural output is a scale (sigma or sigma_F), not a variance.
[[nodiscard]] bool estimates_scale(EstimatorId id) noexcept;
/// True for estimators computed on ECDF-transformed data.
[[nodiscard]] bool rank_based(EstimatorId id) noexcept;

/// Block length / bandwidth, or "adaptive" (Carlstein's rule applied per series).
class SmoothingParam {
public:
    SmoothingParam() = default;
    explicit SmoothingParam(double value) : value_(value) {}
    static SmoothingParam adaptive() { return SmoothingParam(); }

    [[nodiscard]] bool is_adaptive() const noexcept { return !value_.has_value(); }
    [[nodiscard]] double value() const { return value_.value(); }

    friend bool operator==(const SmoothingParam&, const SmoothingParam&) = default;
    /// Numeric parameters ascend; adaptive sorts last.
    friend bool operator<(const SmoothingParam& a, const SmoothingParam& b) noexcept;

private:
    std::optional<double> value_;
};

[[nodiscard]] std::string to_string(const SmoothingParam& p);
/// Parses "adaptive" or a positive finite number.
[[nodiscard]] std::optional<SmoothingParam> parse_smoothing_param(std::string_view text);

struct GridEntry {
    EstimatorId estimator = EstimatorId::Bhat;
    SmoothingParam param;

    friend bool operator==(const GridEntry&, const GridEntry&) = default;
};

enum class Target { SigmaSq, SigmaFSq };

[[nodiscard]] std::string_view to_string(Target t) noexcept;
[[nodiscard]] std::optional<Target> parse_target(std::string_view name) noexcept;

struct ExperimentConfig {
    std::string name = "experiment";
    std::vector<ArmaSpec> specs = reference_specs();
    std::size_t n = 500;
    std::size_t replications = 1000;
    std::size_t burn_in = 1000;
    std::vector<GridEntry> grid;
    Target target = Target::SigmaSq;
    bool split_half = false;
    /// Square sigma-scale estimators (bhat, dhat) before comparing to a variance target.
    bool square_scale_estimators = true;
    double overlap_power = 2.0;
    std::uint64_t master_seed = 20120601;

    /// @throws std::invalid_argument describing the first violated constraint.
    void validate() const;
};

/// Sigma^2 study: bhat and carlstein over {1,2,5,10,30,50,100, adaptive}, jde over n^{1/6}..n^{1/2}.
[[nodiscard]] ExperimentConfig part1_config();
/// Sigma_F^2 study on split halves: dhat over {2,5,10,25,40,50}, pse over {5,10,25,40,45}, both + adaptive.
[[nodiscard]] ExperimentConfig part2_config();

/// One estimate plus the block length it actually used (block estimators only).
struct Evaluation {
    double value = 0.0;
    std::optional<double> block_length;
};

/**
 * @brief Applies one grid entry to one series.
 *
 * Adaptive block lengths are fitted on the series the estimator sees: the raw
 * data for bhat/carlstein/overlap, the ECDF values for dhat/pse.
 *
 * @throws std::invalid_argument for a parameter the estimator cannot use.
 */
[[nodiscard]] Evaluation evaluate_estimator(std::span<const double> series, const GridEntry& entry,
                                            double overlap_power = 2.0);

/// Mean of evaluate_estimator over the two halves; each half gets its own ECDF.
/// @throws std::invalid_argument if the series length is odd.
[[nodiscard]] Evaluation split_half_estimate(std::span<const double> series, const GridEntry& entry,
                                             double overlap_power = 2.0);

struct Metrics {
    double bias = 0.0;
    double variance = 0.0;  ///< population form (denominator R)
    double mse = 0.0;
};

/// bias = mean - truth, variance with denominator R, mse = mean squared error.
/// @throws std::invalid_argument on an empty estimate list.
[[nodiscard]] Metrics aggregate_metrics(std::span<const double> estimates, double truth);

struct MetricRecord {
    std::size_t spec_id = 0;
    ArmaSpec spec{0.0, 0.0};
    EstimatorId estimator = EstimatorId::Bhat;
    SmoothingParam parameter;
    std::optional<double> mean_adaptive_length;
    bool squared = false;
    double truth = 0.0;
    double bias = 0.0;
    double variance = 0.0;
    double mse = 0.0;
};

struct CellError {
    std::size_t spec_id = 0;
    GridEntry entry;
    std::string message;
};

/// Raw per-replication output of one (spec, grid entry) cell.
struct CellSamples {
    std::size_t spec_id = 0;
    GridEntry entry;
    bool squared = false;
    double truth = 0.0;
    std::vector<double> estimates;      ///< indexed by replication, already squared if `squared`
    std::vector<double> block_lengths;  ///< adaptive cells only
    std::optional<std::string> error;
};

struct ExperimentResult {
    std::vector<MetricRecord> records;  ///< canonical order: spec, estimator, parameter
    std::vector<CellError> errors;
};

/// Truth the cells of `config` are scored against for `spec`.
[[nodiscard]] double experiment_truth(const ExperimentConfig& config, const ArmaSpec& spec);

/**
 * @brief Simulates every replication and evaluates every grid entry on it.
 *
 * Replication r of spec s uses the series seeded by mix_seed(master_seed, s, r);
 * all grid entries of a spec see the same series. Work is spread over `threads`
 * workers (0 = hardware concurrency); the output does not depend on that number.
 * Cells come back in canonical order.
 */
[[nodiscard]] std::vector<CellSamples> run_replications(const ExperimentConfig& config,
                                                        unsigned threads = 0);

[[nodiscard]] ExperimentResult run_experiment(const ExperimentConfig& config, unsigned threads = 0);

}  // namespace lrv

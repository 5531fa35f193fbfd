#include "lrv/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "lrv/blocklen.hpp"
#include "lrv/estimators.hpp"
#include "lrv/truth.hpp"

namespace lrv {

std::string_view to_string(EstimatorId id) noexcept {
    switch (id) {
        case EstimatorId::Bhat: return "bhat";
        case EstimatorId::Carlstein: return "carlstein";
        case EstimatorId::Overlap: return "overlap";
        case EstimatorId::Jde: return "jde";
        case EstimatorId::Dhat: return "dhat";
        case EstimatorId::Pse: return "pse";
    }
    return "unknown";
}

std::optional<EstimatorId> parse_estimator(std::string_view name) noexcept {
    for (EstimatorId id : {EstimatorId::Bhat, EstimatorId::Carlstein, EstimatorId::Overlap,
                           EstimatorId::Jde, EstimatorId::Dhat, EstimatorId::Pse}) {
        if (name == to_string(id)) {
            return id;
        }
    }
    return std::nullopt;
}

bool estimates_scale(EstimatorId id) noexcept {
    return id == EstimatorId::Bhat || id == EstimatorId::Dhat;
}

bool rank_based(EstimatorId id) noexcept {
    return id == EstimatorId::Dhat || id == EstimatorId::Pse;
}

bool operator<(const SmoothingParam& a, const SmoothingParam& b) noexcept {
    if (a.is_adaptive() || b.is_adaptive()) {
        return !a.is_adaptive() && b.is_adaptive();
    }
    return *a.value_ < *b.value_;
}

std::string to_string(const SmoothingParam& p) {
    if (p.is_adaptive()) {
        return "adaptive";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, p.value());
    return std::string(buf, res.ptr);
}

std::optional<SmoothingParam> parse_smoothing_param(std::string_view text) {
    if (text == "adaptive") {
        return SmoothingParam::adaptive();
    }
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(v) ||
        !(v > 0.0)) {
        return std::nullopt;
    }
    return SmoothingParam(v);
}

std::string_view to_string(Target t) noexcept {
    return t == Target::SigmaSq ? "sigma_sq" : "sigma_F_sq";
}

std::optional<Target> parse_target(std::string_view name) noexcept {
    if (name == "sigma_sq") {
        return Target::SigmaSq;
    }
    if (name == "sigma_F_sq") {
        return Target::SigmaFSq;
    }
    return std::nullopt;
}

void ExperimentConfig::validate() const {
    if (specs.empty()) {
        throw std::invalid_argument("experiment '" + name + "' lists no ARMA specs");
    }
    if (replications < 1) {
        throw std::invalid_argument("experiment '" + name + "': replications must be >= 1");
    }
    if (n < 2) {
        throw std::invalid_argument("experiment '" + name + "': n must be >= 2");
    }
    if (split_half && n % 2 != 0) {
        throw std::invalid_argument("experiment '" + name + "': split_half requires an even n, got " +
                                    std::to_string(n));
    }
    if (grid.empty()) {
        throw std::invalid_argument("experiment '" + name + "': estimator grid is empty");
    }
    if (!(overlap_power > 0.0)) {
        throw std::invalid_argument("experiment '" + name + "': overlap power must be positive");
    }
    // Cells that only fail on the halves of a split sample surface as per-cell errors.
    for (const GridEntry& e : grid) {
        if (e.estimator != EstimatorId::Jde && !e.param.is_adaptive() &&
            e.param.value() > static_cast<double>(n)) {
            throw std::invalid_argument("experiment '" + name + "': block length " +
                                        to_string(e.param) + " exceeds n = " + std::to_string(n));
        }
    }
}

namespace {

std::vector<GridEntry> grid_of(EstimatorId id, std::initializer_list<double> values, bool adaptive) {
    std::vector<GridEntry> out;
    for (double v : values) {
        out.push_back({id, SmoothingParam(v)});
    }
    if (adaptive) {
        out.push_back({id, SmoothingParam::adaptive()});
    }
    return out;
}

void append(std::vector<GridEntry>& to, const std::vector<GridEntry>& from) {
    to.insert(to.end(), from.begin(), from.end());
}

std::size_t integral_block_length(const SmoothingParam& p) {
    const double v = p.value();
    if (v < 1.0 || v != std::floor(v)) {
        throw std::invalid_argument("block length must be a positive integer, got " + to_string(p));
    }
    return static_cast<std::size_t>(v);
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) {
                            failure = std::current_exception();
                        }
                    }
                }
            });
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace

ExperimentConfig part1_config() {
    ExperimentConfig cfg;
    cfg.name = "part1";
    cfg.target = Target::SigmaSq;
    cfg.split_half = false;
    append(cfg.grid, grid_of(EstimatorId::Bhat, {1, 2, 5, 10, 30, 50, 100}, true));
    append(cfg.grid, grid_of(EstimatorId::Carlstein, {1, 2, 5, 10, 30, 50, 100}, true));
    append(cfg.grid, grid_of(EstimatorId::Jde, {2.8, 3.5, 4.7, 7.9, 22.4}, false));
    return cfg;
}

ExperimentConfig part2_config() {
    ExperimentConfig cfg;
    cfg.name = "part2";
    cfg.target = Target::SigmaFSq;
    cfg.split_half = true;
    append(cfg.grid, grid_of(EstimatorId::Dhat, {2, 5, 10, 25, 40, 50}, true));
    append(cfg.grid, grid_of(EstimatorId::Pse, {5, 10, 25, 40, 45}, true));
    return cfg;
}

Evaluation evaluate_estimator(std::span<const double> series, const GridEntry& entry,
                              double overlap_power) {
    if (entry.estimator == EstimatorId::Jde) {
        if (entry.param.is_adaptive()) {
            throw std::invalid_argument("jde takes a bandwidth, not an adaptive block length");
        }
        return {jde_kernel_estimator(series, KernelSpec{KernelKind::Bartlett, entry.param.value()}),
                std::nullopt};
    }

    std::vector<double> ranks;
    if (rank_based(entry.estimator)) {
        ranks = ecdf_transform(series);
    }
    const std::span<const double> data = rank_based(entry.estimator) ? std::span<const double>(ranks)
                                                                     : series;
    const std::size_t l = entry.param.is_adaptive() ? adaptive_block_length(data)
                                                    : integral_block_length(entry.param);
    double value = 0.0;
    switch (entry.estimator) {
        case EstimatorId::Bhat:
        case EstimatorId::Dhat: value = bhat_n(data, l); break;
        case EstimatorId::Carlstein: value = carlstein(data, l); break;
        case EstimatorId::Overlap: value = overlapping_block(data, l, overlap_power); break;
        case EstimatorId::Pse: value = overlapping_block(data, l, 2.0); break;
        case EstimatorId::Jde: break;
    }
    return {value, static_cast<double>(l)};
}

Evaluation split_half_estimate(std::span<const double> series, const GridEntry& entry,
                               double overlap_power) {
    if (series.size() % 2 != 0 || series.empty()) {
        throw std::invalid_argument("split-half estimation needs an even, non-zero length, got " +
                                    std::to_string(series.size()));
    }
    const std::size_t half = series.size() / 2;
    const Evaluation a = evaluate_estimator(series.first(half), entry, overlap_power);
    const Evaluation b = evaluate_estimator(series.subspan(half), entry, overlap_power);
    Evaluation out{0.5 * (a.value + b.value), std::nullopt};
    if (a.block_length && b.block_length) {
        out.block_length = 0.5 * (*a.block_length + *b.block_length);
    }
    return out;
}

Metrics aggregate_metrics(std::span<const double> estimates, double truth) {
    if (estimates.empty()) {
        throw std::invalid_argument("cannot aggregate an empty set of estimates");
    }
    const double r = static_cast<double>(estimates.size());
    const double mean = std::accumulate(estimates.begin(), estimates.end(), 0.0) / r;
    double variance = 0.0;
    for (double e : estimates) {
        variance += (e - mean) * (e - mean);
    }
    variance /= r;
    const double bias = mean - truth;
    // bias^2 + population variance equals mean((e - truth)^2) algebraically.
    return {bias, variance, bias * bias + variance};
}

double experiment_truth(const ExperimentConfig& config, const ArmaSpec& spec) {
    return config.target == Target::SigmaSq ? finite_n_variance(spec, config.n) : sigma_F_sq(spec);
}

std::vector<CellSamples> run_replications(const ExperimentConfig& config, unsigned threads) {
    config.validate();
    const std::size_t n_specs = config.specs.size();
    const std::size_t n_grid = config.grid.size();
    const std::size_t reps = config.replications;

    std::vector<CellSamples> cells(n_specs * n_grid);
    for (std::size_t s = 0; s < n_specs; ++s) {
        const double truth = experiment_truth(config, config.specs[s]);
        for (std::size_t g = 0; g < n_grid; ++g) {
            CellSamples& c = cells[s * n_grid + g];
            c.spec_id = s;
            c.entry = config.grid[g];
            c.squared = config.square_scale_estimators && estimates_scale(c.entry.estimator);
            c.truth = truth;
            c.estimates.assign(reps, 0.0);
            if (c.entry.param.is_adaptive()) {
                c.block_lengths.assign(reps, 0.0);
            }
        }
    }

    // Lowest failing replication per cell, so the reported message is order-independent.
    std::vector<std::optional<std::pair<std::size_t, std::string>>> failures(cells.size());
    std::mutex failures_mutex;

    parallel_for(n_specs * reps, threads, [&](std::size_t task) {
        const std::size_t s = task / reps;
        const std::size_t r = task % reps;
        const SimConfig sim{config.n, config.burn_in, mix_seed(config.master_seed, s, r)};
        const Series series = simulate_arma(config.specs[s], sim);
        for (std::size_t g = 0; g < n_grid; ++g) {
            CellSamples& c = cells[s * n_grid + g];
            try {
                const Evaluation ev = config.split_half
                                          ? split_half_estimate(series, c.entry, config.overlap_power)
                                          : evaluate_estimator(series, c.entry, config.overlap_power);
                c.estimates[r] = c.squared ? ev.value * ev.value : ev.value;
                if (!c.block_lengths.empty()) {
                    c.block_lengths[r] = ev.block_length.value_or(0.0);
                }
            } catch (const std::exception& e) {
                std::lock_guard lock(failures_mutex);
                auto& slot = failures[s * n_grid + g];
                if (!slot || r < slot->first) {
                    slot.emplace(r, e.what());
                }
            }
        }
    });

    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (failures[i]) {
            cells[i].error = "replication " + std::to_string(failures[i]->first) + ": " +
                             failures[i]->second;
        }
    }

    std::stable_sort(cells.begin(), cells.end(), [](const CellSamples& a, const CellSamples& b) {
        if (a.spec_id != b.spec_id) {
            return a.spec_id < b.spec_id;
        }
        if (a.entry.estimator != b.entry.estimator) {
            return a.entry.estimator < b.entry.estimator;
        }
        return a.entry.param < b.entry.param;
    });
    return cells;
}

ExperimentResult run_experiment(const ExperimentConfig& config, unsigned threads) {
    ExperimentResult result;
    for (const CellSamples& c : run_replications(config, threads)) {
        if (c.error) {
            result.errors.push_back({c.spec_id, c.entry, *c.error});
            continue;
        }
        const Metrics m = aggregate_metrics(c.estimates, c.truth);
        MetricRecord rec;
        rec.spec_id = c.spec_id;
        rec.spec = config.specs[c.spec_id];
        rec.estimator = c.entry.estimator;
        rec.parameter = c.entry.param;
        if (!c.block_lengths.empty()) {
            rec.mean_adaptive_length =
                std::accumulate(c.block_lengths.begin(), c.block_lengths.end(), 0.0) /
                static_cast<double>(c.block_lengths.size());
        }
        rec.squared = c.squared;
        rec.truth = c.truth;
        rec.bias = m.bias;
        rec.variance = m.variance;
        rec.mse = m.mse;
        result.records.push_back(rec);
    }
    return result;
}

}  // namespace lrv

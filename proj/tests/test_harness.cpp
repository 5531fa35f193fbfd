#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lrv/blocklen.hpp"
#include "lrv/estimators.hpp"
#include "lrv/harness.hpp"
#include "lrv/truth.hpp"
#include "test_support.hpp"

namespace lrv {
namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.name = "small";
    cfg.specs = {ArmaSpec(0.5, 0.0), ArmaSpec(0.0, 0.0)};
    cfg.n = 200;
    cfg.replications = 40;
    cfg.grid = {{EstimatorId::Carlstein, SmoothingParam(5)},
                {EstimatorId::Bhat, SmoothingParam::adaptive()},
                {EstimatorId::Jde, SmoothingParam(3.5)},
                {EstimatorId::Bhat, SmoothingParam(2)}};
    return cfg;
}

TEST(Names, RoundTrip) {
    for (auto id : {EstimatorId::Bhat, EstimatorId::Carlstein, EstimatorId::Overlap, EstimatorId::Jde,
                    EstimatorId::Dhat, EstimatorId::Pse}) {
        EXPECT_EQ(parse_estimator(to_string(id)), id);
    }
    EXPECT_FALSE(parse_estimator("newey_west"));
    EXPECT_EQ(parse_target("sigma_F_sq"), Target::SigmaFSq);
    EXPECT_FALSE(parse_target("sigma"));
    EXPECT_TRUE(parse_smoothing_param("adaptive")->is_adaptive());
    EXPECT_EQ(parse_smoothing_param("2.8")->value(), 2.8);
    EXPECT_FALSE(parse_smoothing_param("0"));
    EXPECT_FALSE(parse_smoothing_param("-3"));
    EXPECT_FALSE(parse_smoothing_param("5x"));
    EXPECT_EQ(to_string(SmoothingParam(22.4)), "22.4");
    EXPECT_EQ(to_string(SmoothingParam(10)), "10");
    EXPECT_TRUE(SmoothingParam(100) < SmoothingParam::adaptive());
    EXPECT_FALSE(SmoothingParam::adaptive() < SmoothingParam(1));
}

TEST(AggregateMetrics, HandComputedValues) {
    const std::vector<double> same{1, 1, 1};
    const Metrics a = aggregate_metrics(same, 1.0);
    EXPECT_EQ(a.bias, 0.0);
    EXPECT_EQ(a.variance, 0.0);
    EXPECT_EQ(a.mse, 0.0);

    const std::vector<double> spread{0, 2};
    const Metrics b = aggregate_metrics(spread, 1.0);
    EXPECT_EQ(b.bias, 0.0);
    EXPECT_EQ(b.variance, 1.0);
    EXPECT_EQ(b.mse, 1.0);

    const std::vector<double> offset{2, 2};
    const Metrics c = aggregate_metrics(offset, 1.0);
    EXPECT_EQ(c.bias, 1.0);
    EXPECT_EQ(c.variance, 0.0);
    EXPECT_EQ(c.mse, 1.0);

    EXPECT_THROW((void)aggregate_metrics(std::vector<double>{}, 0.0), std::invalid_argument);
}

TEST(AggregateMetrics, MseEqualsMeanSquaredError) {
    const auto e = testing::normal_sample(3, 1000, 2.0);
    const Metrics m = aggregate_metrics(e, 0.7);
    double direct = 0.0;
    for (double v : e) {
        direct += (v - 0.7) * (v - 0.7);
    }
    direct /= static_cast<double>(e.size());
    EXPECT_NEAR(m.mse, direct, 1e-9 * direct);
}

TEST(SplitHalf, Examples) {
    const GridEntry dhat1{EstimatorId::Dhat, SmoothingParam(1)};
    const std::vector<double> x{5, 7, 7, 5};
    EXPECT_NEAR(split_half_estimate(x, dhat1).value, 0.313328534328875063, 1e-15);

    const GridEntry carl2{EstimatorId::Carlstein, SmoothingParam(2)};
    EXPECT_EQ(split_half_estimate(std::vector<double>(10, 3.0), carl2).value, 0.0);

    auto half = testing::normal_sample(4, 50);
    std::vector<double> doubled(half);
    doubled.insert(doubled.end(), half.begin(), half.end());
    EXPECT_DOUBLE_EQ(split_half_estimate(doubled, carl2).value, carlstein(half, 2));

    EXPECT_THROW((void)split_half_estimate(std::vector<double>{1, 2, 3}, carl2), std::invalid_argument);
}

TEST(SplitHalf, EachHalfUsesItsOwnEcdf) {
    auto x = testing::normal_sample(5, 100);
    for (std::size_t i = 50; i < 100; ++i) {
        x[i] += 10.0;  // second half entirely above the first
    }
    const GridEntry e{EstimatorId::Dhat, SmoothingParam(5)};
    const double expected = 0.5 * (dhat_n(std::span(x).first(50), 5) + dhat_n(std::span(x).subspan(50), 5));
    EXPECT_DOUBLE_EQ(split_half_estimate(x, e).value, expected);
}

TEST(EvaluateEstimator, AdaptiveUsesFittedLength) {
    const Series x = simulate_arma(ArmaSpec(0.5, 0.5), {500, 1000, 3});
    const Evaluation ev = evaluate_estimator(x, {EstimatorId::Carlstein, SmoothingParam::adaptive()});
    const std::size_t l = adaptive_block_length(x);
    EXPECT_EQ(ev.block_length, static_cast<double>(l));
    EXPECT_EQ(ev.value, carlstein(x, l));

    const Evaluation rk = evaluate_estimator(x, {EstimatorId::Dhat, SmoothingParam::adaptive()});
    const auto u = ecdf_transform(x);
    EXPECT_EQ(rk.block_length, static_cast<double>(adaptive_block_length(u)));
}

TEST(EvaluateEstimator, RejectsUnusableParameters) {
    const auto x = testing::normal_sample(2, 30);
    EXPECT_THROW((void)evaluate_estimator(x, {EstimatorId::Jde, SmoothingParam::adaptive()}),
                 std::invalid_argument);
    EXPECT_THROW((void)evaluate_estimator(x, {EstimatorId::Bhat, SmoothingParam(2.5)}),
                 std::invalid_argument);
    EXPECT_THROW((void)evaluate_estimator(x, {EstimatorId::Bhat, SmoothingParam(31)}),
                 std::invalid_argument);
    EXPECT_NO_THROW((void)evaluate_estimator(x, {EstimatorId::Jde, SmoothingParam(2.8)}));
}

TEST(ExperimentConfig, Validation) {
    ExperimentConfig cfg = small_config();
    EXPECT_NO_THROW(cfg.validate());
    cfg.split_half = true;
    cfg.n = 201;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = small_config();
    cfg.replications = 0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = small_config();
    cfg.grid.push_back({EstimatorId::Carlstein, SmoothingParam(500)});
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = small_config();
    cfg.grid.clear();
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(DefaultConfigs, MatchReferenceGrids) {
    const ExperimentConfig p1 = part1_config();
    EXPECT_EQ(p1.n, 500u);
    EXPECT_EQ(p1.replications, 1000u);
    EXPECT_EQ(p1.specs.size(), 11u);
    EXPECT_EQ(p1.target, Target::SigmaSq);
    EXPECT_FALSE(p1.split_half);
    std::vector<double> jde;
    std::vector<double> carl;
    for (const GridEntry& e : p1.grid) {
        if (e.estimator == EstimatorId::Jde) {
            jde.push_back(e.param.value());
        }
        if (e.estimator == EstimatorId::Carlstein && !e.param.is_adaptive()) {
            carl.push_back(e.param.value());
        }
    }
    EXPECT_EQ(jde, (std::vector<double>{2.8, 3.5, 4.7, 7.9, 22.4}));
    EXPECT_EQ(carl, (std::vector<double>{1, 2, 5, 10, 30, 50, 100}));

    const ExperimentConfig p2 = part2_config();
    EXPECT_TRUE(p2.split_half);
    EXPECT_EQ(p2.target, Target::SigmaFSq);
    std::vector<double> dhat;
    std::vector<double> pse;
    for (const GridEntry& e : p2.grid) {
        if (e.param.is_adaptive()) {
            continue;
        }
        (e.estimator == EstimatorId::Dhat ? dhat : pse).push_back(e.param.value());
    }
    EXPECT_EQ(dhat, (std::vector<double>{2, 5, 10, 25, 40, 50}));
    EXPECT_EQ(pse, (std::vector<double>{5, 10, 25, 40, 45}));
}

TEST(RunExperiment, CanonicalOrderAndIdentity) {
    const ExperimentResult res = run_experiment(small_config(), 1);
    ASSERT_TRUE(res.errors.empty());
    ASSERT_EQ(res.records.size(), 8u);
    for (std::size_t i = 1; i < res.records.size(); ++i) {
        const auto& a = res.records[i - 1];
        const auto& b = res.records[i];
        const bool ordered = a.spec_id < b.spec_id ||
                             (a.spec_id == b.spec_id && (a.estimator < b.estimator ||
                                                         (a.estimator == b.estimator && a.parameter < b.parameter)));
        EXPECT_TRUE(ordered) << i;
    }
    for (const MetricRecord& r : res.records) {
        EXPECT_NEAR(r.mse, r.bias * r.bias + r.variance, 1e-9 * std::max(1.0, r.mse));
        EXPECT_GE(r.mse, 0.0);
        EXPECT_EQ(r.squared, r.estimator == EstimatorId::Bhat);
        EXPECT_EQ(r.mean_adaptive_length.has_value(), r.parameter.is_adaptive());
        EXPECT_DOUBLE_EQ(r.truth, finite_n_variance(r.spec, 200));
    }
}

TEST(RunExperiment, IndependentOfThreadCount) {
    const ExperimentConfig cfg = small_config();
    const auto one = run_replications(cfg, 1);
    const auto four = run_replications(cfg, 4);
    ASSERT_EQ(one.size(), four.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        EXPECT_EQ(one[i].estimates, four[i].estimates);
        EXPECT_EQ(one[i].block_lengths, four[i].block_lengths);
    }
}

TEST(RunExperiment, CellsAreReRunnableInIsolation) {
    ExperimentConfig cfg = small_config();
    const auto all = run_replications(cfg, 2);
    ExperimentConfig single = cfg;
    single.grid = {{EstimatorId::Jde, SmoothingParam(3.5)}};
    const auto alone = run_replications(single, 1);
    for (const CellSamples& c : all) {
        if (c.entry == single.grid[0]) {
            EXPECT_EQ(c.estimates, alone[c.spec_id].estimates);
        }
    }
}

TEST(RunExperiment, InvalidCellDoesNotAbortOthers) {
    ExperimentConfig cfg = small_config();
    cfg.split_half = true;
    cfg.grid.push_back({EstimatorId::Carlstein, SmoothingParam(150)});  // > n/2
    cfg.grid.push_back({EstimatorId::Jde, SmoothingParam::adaptive()});
    const ExperimentResult res = run_experiment(cfg, 2);
    EXPECT_EQ(res.records.size(), 8u);
    EXPECT_EQ(res.errors.size(), 4u);
    for (const CellError& e : res.errors) {
        EXPECT_NE(e.message.find("replication 0"), std::string::npos) << e.message;
    }
}

TEST(RunExperiment, SingleReplicationHasZeroVariance) {
    ExperimentConfig cfg = small_config();
    cfg.replications = 1;
    for (const MetricRecord& r : run_experiment(cfg).records) {
        EXPECT_EQ(r.variance, 0.0);
    }
}

TEST(RunExperiment, WhiteNoiseUnitBlockUnbiased) {
    ExperimentConfig cfg;
    cfg.specs = {ArmaSpec(0, 0)};
    cfg.grid = {{EstimatorId::Carlstein, SmoothingParam(1)}};
    const auto cells = run_replications(cfg);
    const Metrics m = aggregate_metrics(cells[0].estimates, cells[0].truth);
    EXPECT_EQ(cells[0].truth, 1.0);
    EXPECT_LT(std::abs(m.bias), 3.0 * std::sqrt(m.variance / 1000.0));
}

TEST(RunExperiment, Ar1BhatSquaredUnderestimatesEverywhere) {
    ExperimentConfig cfg;
    cfg.specs = {ArmaSpec(0.5, 0)};
    for (double l : {1, 2, 5, 10, 30, 50, 100}) {
        cfg.grid.push_back({EstimatorId::Bhat, SmoothingParam(l)});
    }
    for (const MetricRecord& r : run_experiment(cfg).records) {
        EXPECT_LT(r.bias, 0.0) << "l = " << to_string(r.parameter);
    }
}

TEST(RunExperiment, WhiteNoiseMseMinimalAtUnitBlock) {
    ExperimentConfig cfg;
    cfg.specs = {ArmaSpec(0, 0)};
    for (double l : {1, 2, 5, 10, 30, 50, 100}) {
        cfg.grid.push_back({EstimatorId::Carlstein, SmoothingParam(l)});
    }
    const auto recs = run_experiment(cfg).records;
    const auto best = std::min_element(recs.begin(), recs.end(),
                                       [](const auto& a, const auto& b) { return a.mse < b.mse; });
    EXPECT_EQ(best->parameter, SmoothingParam(1));
}

TEST(RunExperiment, SigmaFTargetUsesRankTruth) {
    ExperimentConfig cfg = part2_config();
    cfg.specs = {ArmaSpec(0.1, 0)};
    cfg.replications = 5;
    for (const MetricRecord& r : run_experiment(cfg).records) {
        EXPECT_DOUBLE_EQ(r.truth, sigma_F_sq(ArmaSpec(0.1, 0)));
        EXPECT_EQ(r.squared, r.estimator == EstimatorId::Dhat);
    }
}

}  // namespace
}  // namespace lrv

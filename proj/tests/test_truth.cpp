#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "lrv/process_sim.hpp"
#include "lrv/truth.hpp"

namespace lrv {
namespace {

// O(n^2) oracle: Var(n^{-1/2} sum X_i) = (1/n) sum_{i,j} gamma_|i-j|.
double finite_n_double_sum(const ArmaSpec& spec, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            acc += arma_autocov(spec, i > j ? i - j : j - i);
        }
    }
    return acc / static_cast<double>(n);
}

TEST(ArmaAutocov, ClosedForms) {
    EXPECT_EQ(arma_autocov(ArmaSpec(0, 0), 0), 1.0);
    for (std::size_t k = 1; k < 10; ++k) {
        EXPECT_EQ(arma_autocov(ArmaSpec(0, 0), k), 0.0);
    }
    EXPECT_NEAR(arma_autocov(ArmaSpec(0.5, 0.5), 0), 7.0 / 3.0, 1e-15);
    EXPECT_NEAR(arma_autocov(ArmaSpec(0.5, 0.5), 1), 5.0 / 3.0, 1e-15);
    EXPECT_NEAR(arma_autocov(ArmaSpec(0.5, 0.5), 2), 5.0 / 6.0, 1e-15);
    EXPECT_NEAR(arma_autocov(ArmaSpec(0.5, 0.0), 0), 4.0 / 3.0, 1e-15);
    EXPECT_NEAR(arma_autocov(ArmaSpec(0.5, 0.0), 1), 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(arma_autocov(ArmaSpec(0.0, 0.8, 2.0), 0), 4.0 * 1.64, 1e-14);
}

TEST(ArmaAutocov, BoundedByVariance) {
    for (const ArmaSpec& s : reference_specs()) {
        EXPECT_GT(arma_autocov(s, 0), 0.0);
        for (std::size_t k = 1; k < 50; ++k) {
            EXPECT_LE(std::abs(arma_autocov(s, k)), arma_autocov(s, 0));
        }
    }
}

TEST(FiniteNVariance, ReferenceValues) {
    for (std::size_t n : {1u, 2u, 500u}) {
        EXPECT_DOUBLE_EQ(finite_n_variance(ArmaSpec(0, 0), n), 1.0);
    }
    const double ar = finite_n_variance(ArmaSpec(0.5, 0), 500);
    EXPECT_GT(ar, 4.0 / 3.0);
    EXPECT_LT(ar, 4.0);
    EXPECT_NEAR(ar, 4.0, 0.03 * 4.0);
    EXPECT_NEAR(ar, 3.989333333333333, 1e-12);  // O(n^2) oracle, numpy
    const double neg = finite_n_variance(ArmaSpec(-0.5, 0), 500);
    EXPECT_GT(neg, 4.0 / 9.0);
    EXPECT_NEAR(neg, 0.4456296296296296, 1e-12);
    EXPECT_THROW((void)finite_n_variance(ArmaSpec(0, 0), 0), std::invalid_argument);
}

TEST(FiniteNVariance, MatchesDoubleSumForAllReferenceSpecs) {
    for (const ArmaSpec& s : reference_specs()) {
        for (std::size_t n : {1u, 2u, 17u, 300u}) {
            EXPECT_NEAR(finite_n_variance(s, n), finite_n_double_sum(s, n), 1e-11)
                << s.ar() << "," << s.ma() << " n=" << n;
        }
    }
}

TEST(FiniteNVariance, ConvergesToLimit) {
    for (const ArmaSpec& s : reference_specs()) {
        const double limit = sigma_sq_limit(s);
        double prev_gap = INFINITY;
        for (std::size_t n : {100u, 1000u, 10000u, 100000u}) {
            const double gap = std::abs(finite_n_variance(s, n) - limit);
            EXPECT_LE(gap, prev_gap) << s.ar() << "," << s.ma() << " n=" << n;
            prev_gap = gap;
        }
        EXPECT_LT(prev_gap, 1e-3);
    }
}

TEST(SigmaSqLimit, ReferenceValues) {
    EXPECT_NEAR(sigma_sq_limit(ArmaSpec(0, 0)), 1.0, 1e-12);
    EXPECT_NEAR(sigma_sq_limit(ArmaSpec(0.5, 0)), 4.0, 1e-11);
    EXPECT_NEAR(sigma_sq_limit(ArmaSpec(0.5, 0.5)), 9.0, 1e-11);
    EXPECT_THROW((void)sigma_sq_limit(ArmaSpec(0.5, 0), 0.0), std::invalid_argument);
}

TEST(SigmaSqLimit, SeriesEqualsClosedFormOnReferenceSpecs) {
    for (const ArmaSpec& s : reference_specs()) {
        EXPECT_NEAR(sigma_sq_limit(s, 1e-12), sigma_sq_closed_form(s), 1e-10 * arma_autocov(s, 0))
            << s.ar() << "," << s.ma();
    }
    const ArmaSpec scaled(-0.8, 0.3, 1.7);
    EXPECT_NEAR(sigma_sq_limit(scaled), sigma_sq_closed_form(scaled), 1e-10);
}

TEST(SpearmanCov, ReferenceValues) {
    EXPECT_EQ(spearman_cov(0.0), 0.0);
    EXPECT_NEAR(spearman_cov(1.0), 1.0 / 12.0, 1e-16);
    EXPECT_NEAR(spearman_cov(0.5), 0.0402153116275831219, 1e-16);  // mpmath, 30 digits
    EXPECT_THROW((void)spearman_cov(1.01), std::invalid_argument);
    EXPECT_THROW((void)spearman_cov(-1.5), std::invalid_argument);
}

TEST(SpearmanCov, OddAndIncreasing) {
    double prev = -INFINITY;
    for (double r = -1.0; r <= 1.0; r += 0.01) {
        EXPECT_EQ(spearman_cov(-r), -spearman_cov(r));
        EXPECT_GT(spearman_cov(r), prev);
        prev = spearman_cov(r);
    }
}

TEST(SpearmanCov, BivariateNormalMonteCarlo) {
    std::mt19937_64 gen(77);
    std::normal_distribution<double> z;
    const double rho = 0.5;
    const int reps = 400'000;
    double acc = 0.0;
    double acc2 = 0.0;
    for (int i = 0; i < reps; ++i) {
        const double a = z(gen);
        const double b = rho * a + std::sqrt(1.0 - rho * rho) * z(gen);
        const double p = (0.5 * std::erfc(-a / std::numbers::sqrt2) - 0.5) *
                         (0.5 * std::erfc(-b / std::numbers::sqrt2) - 0.5);
        acc += p;
        acc2 += p * p;
    }
    const double m = acc / reps;
    const double se = std::sqrt((acc2 / reps - m * m) / reps);
    EXPECT_NEAR(m, spearman_cov(rho), 3.0 * se);
}

TEST(SigmaFSq, ReferenceValues) {
    EXPECT_DOUBLE_EQ(sigma_F_sq(ArmaSpec(0, 0)), 1.0 / 12.0);
    // mpmath nsum of 1/12 + 2 sum_j asin(0.5^j / 2) / (2 pi)
    EXPECT_NEAR(sigma_F_sq(ArmaSpec(0.5, 0)), 0.243460605948521810, 1e-12);
    EXPECT_NEAR(sigma_F_sq(ArmaSpec(-0.1, 0)), 0.068858069840595955, 1e-12);
    EXPECT_LT(sigma_F_sq(ArmaSpec(-0.1, 0)), 1.0 / 12.0);
    EXPECT_NEAR(sigma_F_sq(ArmaSpec(0.5, 0.5)), 0.313614308476932218, 1e-12);
}

TEST(SigmaFSq, PositiveOnReferenceSpecs) {
    for (const ArmaSpec& s : reference_specs()) {
        const double v = sigma_F_sq(s);
        EXPECT_GT(v, 0.0) << s.ar() << "," << s.ma();
        if (s == ArmaSpec(0.5, 0.5)) {
            // Strong positive dependence pushes the series past 1/4.
            EXPECT_GT(v, 0.25);
        } else {
            EXPECT_LE(v, 0.25) << s.ar() << "," << s.ma();
        }
    }
}

TEST(SigmaFSq, ScaleFree) {
    EXPECT_NEAR(sigma_F_sq(ArmaSpec(0.5, 0.2, 3.0)), sigma_F_sq(ArmaSpec(0.5, 0.2, 1.0)), 1e-15);
}

TEST(MakeTruth, Bundle) {
    const TruthSet t = make_truth(ArmaSpec(0.5, 0.5), 500);
    ASSERT_EQ(t.gamma.size(), 500u);
    EXPECT_NEAR(t.gamma[1], 5.0 / 3.0, 1e-15);
    EXPECT_NEAR(t.sigma_sq, 9.0, 1e-10);
    EXPECT_NEAR(t.sigma_sq_finite_n, 8.973333333333334, 1e-10);
    EXPECT_NEAR(t.sigma_F_sq, 0.313614308476932218, 1e-12);
}

}  // namespace
}  // namespace lrv

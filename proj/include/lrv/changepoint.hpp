#pragma once

#include <cstddef>

#include "lrv/process_sim.hpp"

namespace lrv {

/// Observations before (x) and after (y) a candidate change point.
struct TwoSample {
    Series x;
    Series y;
};

/**
 * @brief Two-sample Hodges-Lehmann shift estimate: median of {y_j - x_i}.
 *
 * An even number of differences takes the midpoint of the two central order
 * statistics, which keeps hodges_lehmann(x, y) == -hodges_lehmann(y, x).
 * Uses selection on the n1*n2 differences, not a full sort.
 */
[[nodiscard]] double hodges_lehmann(const TwoSample& sample);

/// h'(0) * sqrt(n1 n2 / (n1 + n2)) * Q / sigma_F_hat; asymptotically N(0,1) under no change.
/// @throws std::invalid_argument unless both scale inputs are positive.
[[nodiscard]] double studentized_hl(const TwoSample& sample, double sigma_F_hat, double h_prime_0);

/**
 * @brief Density at zero of X - X', estimated from the between-sample differences.
 *
 * Gaussian-kernel density estimate at Q of {y_j - x_i} (i.e. of the differences
 * recentred by the Hodges-Lehmann shift) with Silverman's bandwidth
 * 0.9 * min(sd, IQR/1.34) * m^{-1/5}. The bandwidth is floored so that a
 * degenerate sample yields a large finite value.
 */
[[nodiscard]] double estimate_h_prime_0(const TwoSample& sample);

/// sigma_F estimate for the two-sample setting: dhat_n with Carlstein's adaptive block
/// length on each sample separately, averaged.
[[nodiscard]] double two_sample_sigma_F(const TwoSample& sample);

struct HlTestReport {
    double q = 0.0;
    double sigma_F_hat = 0.0;
    double h_prime_0 = 0.0;
    double statistic = 0.0;
    double p_value = 1.0;  ///< two-sided, standard normal reference
};

[[nodiscard]] HlTestReport hl_test(const TwoSample& sample);

}  // namespace lrv

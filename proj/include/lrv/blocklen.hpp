#pragma once

#include <cstddef>
#include <span>

namespace lrv {

/// Fitted AR(1) coefficient, always inside [-0.99, 0.99].
struct Ar1Fit {
    double rho_hat = 0.0;
};

inline constexpr double kAr1Clamp = 0.99;

/**
 * @brief Yule-Walker AR(1) fit: the lag-1 sample autocorrelation, clamped to +-0.99.
 * @throws std::invalid_argument if n < 2 or the series is constant.
 */
[[nodiscard]] Ar1Fit fit_ar1(std::span<const double> series);

/**
 * @brief Carlstein's AR(1) MSE-optimal block length.
 *
 * l = round((2|rho| / (1 - rho^2))^{2/3} * n^{1/3}), at least 1 and at most
 * max(1, floor(n/2)) so that two full blocks exist whenever n >= 2.
 */
[[nodiscard]] std::size_t carlstein_block_length(const Ar1Fit& fit, std::size_t n);

/// fit_ar1 followed by carlstein_block_length on the same series.
[[nodiscard]] std::size_t adaptive_block_length(std::span<const double> series);

}  // namespace lrv

#include "lrv/blocklen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lrv {

Ar1Fit fit_ar1(std::span<const double> series) {
    const std::size_t n = series.size();
    if (n < 2) {
        throw std::invalid_argument("AR(1) fit needs at least two observations");
    }
    const double mean = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(n);
    double lag0 = 0.0;
    double lag1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = series[i] - mean;
        lag0 += d * d;
        if (i + 1 < n) {
            lag1 += d * (series[i + 1] - mean);
        }
    }
    if (!(lag0 > 0.0)) {
        throw std::invalid_argument("AR(1) fit is undefined for a constant series");
    }
    return Ar1Fit{std::clamp(lag1 / lag0, -kAr1Clamp, kAr1Clamp)};
}

std::size_t carlstein_block_length(const Ar1Fit& fit, std::size_t n) {
    const std::size_t cap = std::max<std::size_t>(1, n / 2);
    const double rho = std::clamp(fit.rho_hat, -kAr1Clamp, kAr1Clamp);
    const double ratio = 2.0 * std::abs(rho) / (1.0 - rho * rho);
    const double raw = std::pow(ratio, 2.0 / 3.0) * std::cbrt(static_cast<double>(n));
    const double rounded = std::round(raw);
    if (!(rounded >= 1.0)) {
        return 1;
    }
    if (rounded >= static_cast<double>(cap)) {
        return cap;
    }
    return static_cast<std::size_t>(rounded);
}

std::size_t adaptive_block_length(std::span<const double> series) {
    return carlstein_block_length(fit_ar1(series), series.size());
}

}  // namespace lrv

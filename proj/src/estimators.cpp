#include "lrv/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lrv {

namespace {

constexpr double kSqrtHalfPi = 1.2533141373155002512;  // sqrt(pi/2)

void require_nonempty(std::span<const double> series) {
    if (series.empty()) {
        throw std::invalid_argument("series must contain at least one observation");
    }
}

void require_block_length(std::span<const double> series, std::size_t l) {
    require_nonempty(series);
    if (l == 0 || l > series.size()) {
        throw std::invalid_argument("block length " + std::to_string(l) +
                                    " outside [1, n] for n = " + std::to_string(series.size()));
    }
}

double mean_of(std::span<const double> xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

std::vector<double> centered(std::span<const double> xs) {
    const double m = mean_of(xs);
    std::vector<double> out(xs.size());
    std::transform(xs.begin(), xs.end(), out.begin(), [m](double x) { return x - m; });
    return out;
}

// Non-overlapping |S_i(l) - l*mean| / sqrt(l) raised to `power`, averaged over floor(n/l) blocks.
double block_power_mean(std::span<const double> series, std::size_t l, double power) {
    const std::vector<double> dev = centered(series);
    const std::size_t k = series.size() / l;
    const double root_l = std::sqrt(static_cast<double>(l));
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const auto first = dev.begin() + static_cast<std::ptrdiff_t>(i * l);
        const double z = std::abs(std::accumulate(first, first + static_cast<std::ptrdiff_t>(l), 0.0)) / root_l;
        acc += power == 1.0 ? z : power == 2.0 ? z * z : std::pow(z, power);
    }
    return acc / static_cast<double>(k);
}

}  // namespace

EcdfTable::EcdfTable(std::span<const double> sample) : sorted_(sample.begin(), sample.end()) {
    require_nonempty(sample);
    std::sort(sorted_.begin(), sorted_.end());
}

double EcdfTable::operator()(double x) const noexcept {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EcdfTable::sup_distance(const std::function<double(double)>& cdf) const {
    // The supremum is attained at a jump, approached from the left or the right.
    const double n = static_cast<double>(sorted_.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < sorted_.size(); ++i) {
        const double f = cdf(sorted_[i]);
        sup = std::max({sup, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return sup;
}

EcdfTable ecdf(std::span<const double> series) { return EcdfTable(series); }

std::vector<double> ecdf_transform(std::span<const double> series) {
    const EcdfTable table(series);
    std::vector<double> out(series.size());
    std::transform(series.begin(), series.end(), out.begin(), [&](double x) { return table(x); });
    return out;
}

double bhat_n(std::span<const double> series, std::size_t l) {
    require_block_length(series, l);
    return kSqrtHalfPi * block_power_mean(series, l, 1.0);
}

double carlstein(std::span<const double> series, std::size_t l) {
    require_block_length(series, l);
    return block_power_mean(series, l, 2.0);
}

double normal_abs_moment_inverse(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) {
        throw std::invalid_argument("power p must be positive and finite");
    }
    // log-space so that large p does not overflow Gamma.
    const double log_cp = 0.5 * std::log(std::numbers::pi) - 0.5 * p * std::numbers::ln2 -
                          std::lgamma(0.5 * (p + 1.0));
    return std::exp(log_cp);
}

double overlapping_block(std::span<const double> series, std::size_t l, double p) {
    require_block_length(series, l);
    const double cp = normal_abs_moment_inverse(p);
    const std::vector<double> dev = centered(series);
    const std::size_t windows = series.size() - l + 1;
    const double root_l = std::sqrt(static_cast<double>(l));

    // Window sums are recomputed every `l` steps to stop drift in the running sum.
    double window = 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < windows; ++i) {
        if (i % l == 0) {
            window = std::accumulate(dev.begin() + static_cast<std::ptrdiff_t>(i),
                                     dev.begin() + static_cast<std::ptrdiff_t>(i + l), 0.0);
        } else {
            window += dev[i + l - 1] - dev[i - 1];
        }
        const double z = std::abs(window) / root_l;
        acc += p == 2.0 ? z * z : std::pow(z, p);
    }
    return cp * acc / static_cast<double>(windows);
}

double block_estimate(std::span<const double> series, const BlockConfig& cfg) {
    if (!(cfg.power > 0.0)) {
        throw std::invalid_argument("power p must be positive");
    }
    if (cfg.overlap) {
        return overlapping_block(series, cfg.block_length, cfg.power);
    }
    if (cfg.power == 2.0) {
        return carlstein(series, cfg.block_length);
    }
    return std::pow(bhat_n(series, cfg.block_length), cfg.power);
}

double jde_kernel_estimator(std::span<const double> series, const KernelSpec& kernel) {
    require_nonempty(series);
    if (!(kernel.bandwidth > 0.0) || !std::isfinite(kernel.bandwidth)) {
        throw std::invalid_argument("kernel bandwidth must be positive");
    }
    const std::vector<double> dev = centered(series);
    const std::size_t n = dev.size();
    double total = 0.0;
    for (double d : dev) {
        total += d * d;
    }
    for (std::size_t h = 1; h < n && static_cast<double>(h) < kernel.bandwidth; ++h) {
        const double weight = 1.0 - static_cast<double>(h) / kernel.bandwidth;
        double cross = 0.0;
        for (std::size_t i = 0; i + h < n; ++i) {
            cross += dev[i] * dev[i + h];
        }
        total += 2.0 * weight * cross;
    }
    // The Bartlett weights are positive semi-definite; clamp rounding noise only.
    return std::max(0.0, total / static_cast<double>(n));
}

double dhat_n(std::span<const double> series, std::size_t l) {
    require_block_length(series, l);
    return bhat_n(ecdf_transform(series), l);
}

double d_n(std::span<const double> series, std::size_t l, const std::function<double(double)>& cdf) {
    require_block_length(series, l);
    std::vector<double> u(series.size());
    for (std::size_t j = 0; j < series.size(); ++j) {
        u[j] = cdf(series[j]);
        if (!(u[j] >= 0.0 && u[j] <= 1.0)) {
            throw std::invalid_argument("distribution function value outside [0, 1]");
        }
    }
    return bhat_n(u, l);
}

double overlapping_rank(std::span<const double> series, std::size_t l) {
    require_block_length(series, l);
    return overlapping_block(ecdf_transform(series), l, 2.0);
}

}  // namespace lrv

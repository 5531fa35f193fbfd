#include "lrv/changepoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "lrv/blocklen.hpp"
#include "lrv/estimators.hpp"

namespace lrv {

namespace {

std::vector<double> pairwise_differences(const TwoSample& s) {
    std::vector<double> d;
    d.reserve(s.x.size() * s.y.size());
    for (double yj : s.y.values()) {
        for (double xi : s.x.values()) {
            d.push_back(yj - xi);
        }
    }
    return d;
}

// k-th order statistic (0-based); reorders `v`.
double select(std::vector<double>& v, std::size_t k) {
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
    return v[k];
}

double median_inplace(std::vector<double>& v) {
    const std::size_t m = v.size();
    const double upper = select(v, m / 2);
    if (m % 2 == 1) {
        return upper;
    }
    // After selection everything left of m/2 is <= upper; its maximum is the lower middle.
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(m / 2));
    return 0.5 * (lower + upper);
}

double quantile_type7(std::vector<double>& v, double prob) {
    const double pos = prob * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const double a = select(v, lo);
    if (lo + 1 >= v.size()) {
        return a;
    }
    const double b = *std::min_element(v.begin() + static_cast<std::ptrdiff_t>(lo + 1), v.end());
    return a + (pos - static_cast<double>(lo)) * (b - a);
}

double sample_sd(std::span<const double> v) {
    const double n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : v) {
        ss += (x - mean) * (x - mean);
    }
    return v.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
}

double sigma_F_one_sample(std::span<const double> series) {
    const std::vector<double> ranks = ecdf_transform(series);
    std::size_t l = 1;
    try {
        l = adaptive_block_length(ranks);
    } catch (const std::invalid_argument&) {
        // Constant ranks (or a single observation): no dependence to account for.
    }
    return bhat_n(ranks, l);
}

}  // namespace

double hodges_lehmann(const TwoSample& sample) {
    std::vector<double> d = pairwise_differences(sample);
    return median_inplace(d);
}

double studentized_hl(const TwoSample& sample, double sigma_F_hat, double h_prime_0) {
    if (!(sigma_F_hat > 0.0) || !(h_prime_0 > 0.0)) {
        throw std::invalid_argument("studentization needs positive sigma_F and H'(0) estimates");
    }
    const double n1 = static_cast<double>(sample.x.size());
    const double n2 = static_cast<double>(sample.y.size());
    return h_prime_0 * std::sqrt(n1 * n2 / (n1 + n2)) * hodges_lehmann(sample) / sigma_F_hat;
}

double estimate_h_prime_0(const TwoSample& sample) {
    std::vector<double> d = pairwise_differences(sample);
    const double q = median_inplace(d);
    for (double& v : d) {
        v -= q;
    }
    const double m = static_cast<double>(d.size());
    const double sd = sample_sd(d);
    const double iqr = quantile_type7(d, 0.75) - quantile_type7(d, 0.25);
    double spread = std::min(sd, iqr / 1.34);
    if (!(spread > 0.0)) {
        spread = std::max(sd, iqr / 1.34);
    }
    double scale = 1.0;
    for (double v : sample.x.values()) {
        scale = std::max(scale, std::abs(v));
    }
    for (double v : sample.y.values()) {
        scale = std::max(scale, std::abs(v));
    }
    const double floor = std::sqrt(std::numeric_limits<double>::epsilon()) * scale;
    const double h = std::max(0.9 * spread * std::pow(m, -0.2), floor);

    double acc = 0.0;
    for (double v : d) {
        const double z = v / h;
        acc += std::exp(-0.5 * z * z);
    }
    return acc / (m * h * std::sqrt(2.0 * std::numbers::pi));
}

double two_sample_sigma_F(const TwoSample& sample) {
    return 0.5 * (sigma_F_one_sample(sample.x) + sigma_F_one_sample(sample.y));
}

HlTestReport hl_test(const TwoSample& sample) {
    HlTestReport r;
    r.q = hodges_lehmann(sample);
    r.sigma_F_hat = two_sample_sigma_F(sample);
    r.h_prime_0 = estimate_h_prime_0(sample);
    r.statistic = studentized_hl(sample, r.sigma_F_hat, r.h_prime_0);
    r.p_value = std::erfc(std::abs(r.statistic) / std::numbers::sqrt2);
    return r;
}

}  // namespace lrv

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace lrv {

/// Block-estimator parameters. `power` is only read by overlapping_block.
struct BlockConfig {
    std::size_t block_length = 1;
    bool overlap = false;
    double power = 2.0;
};

enum class KernelKind { Bartlett };

struct KernelSpec {
    KernelKind kind = KernelKind::Bartlett;
    double bandwidth = 1.0;
};

/**
 * @brief Empirical distribution function of a sample.
 *
 * Holds a sorted copy of the data; F_n(x) = #{i : X_i <= x} / n. Ties are
 * counted, not mid-ranked. Immutable once built.
 */
class EcdfTable {
public:
    /// @throws std::invalid_argument on an empty sample.
    explicit EcdfTable(std::span<const double> sample);

    [[nodiscard]] double operator()(double x) const noexcept;
    [[nodiscard]] std::size_t size() const noexcept { return sorted_.size(); }
    [[nodiscard]] std::span<const double> sorted() const noexcept { return sorted_; }

    /// sup_t |F_n(t) - F(t)| for a continuous, non-decreasing F.
    [[nodiscard]] double sup_distance(const std::function<double(double)>& cdf) const;

private:
    std::vector<double> sorted_;
};

[[nodiscard]] EcdfTable ecdf(std::span<const double> series);

/// (F_n(X_1), ..., F_n(X_n)) with F_n the sample's own ECDF.
[[nodiscard]] std::vector<double> ecdf_transform(std::span<const double> series);

/**
 * @brief Non-overlapping block estimator of sigma (not sigma^2).
 *
 * sqrt(pi/2) times the mean over k = floor(n/l) blocks of |S_i(l) - l*mean| / sqrt(l).
 * Observations past k*l only enter the full-sample mean.
 *
 * @throws std::invalid_argument if l == 0 or l > n.
 */
[[nodiscard]] double bhat_n(std::span<const double> series, std::size_t l);

/// Carlstein's estimator of sigma^2: mean of squared normalized block deviations.
[[nodiscard]] double carlstein(std::span<const double> series, std::size_t l);

/**
 * @brief Overlapping-block estimator of sigma^p.
 *
 * c_p / (n-l+1) * sum over all n-l+1 windows of (|window sum - l*mean| / sqrt(l))^p,
 * with c_p = 1 / E|Z|^p.
 */
[[nodiscard]] double overlapping_block(std::span<const double> series, std::size_t l, double p);

/// Dispatches on `cfg.overlap` to overlapping_block or (p == 2 ? carlstein : bhat_n^p).
[[nodiscard]] double block_estimate(std::span<const double> series, const BlockConfig& cfg);

/// c_p = 1 / E|Z|^p = sqrt(pi) / (2^{p/2} Gamma((p+1)/2)), Z standard normal.
[[nodiscard]] double normal_abs_moment_inverse(double p);

/**
 * @brief Bartlett-kernel HAC estimator of sigma^2.
 *
 * (1/n) sum_{i,j} k((i-j)/bw) (X_i - mean)(X_j - mean), k(x) = max(0, 1-|x|).
 * Only lags h < bw contribute, so the cost is O(n * bw).
 */
[[nodiscard]] double jde_kernel_estimator(std::span<const double> series, const KernelSpec& kernel);

/// bhat_n applied to the ECDF-transformed sample: estimates sigma_F.
[[nodiscard]] double dhat_n(std::span<const double> series, std::size_t l);

/// As dhat_n, but with a known distribution function `cdf` in place of the ECDF.
/// @throws std::invalid_argument if `cdf` leaves [0, 1] on the sample.
[[nodiscard]] double d_n(std::span<const double> series, std::size_t l,
                         const std::function<double(double)>& cdf);

/// Peligrad-Shao style rank estimator of sigma_F^2: overlapping_block(p = 2) on F_n(X_j).
[[nodiscard]] double overlapping_rank(std::span<const double> series, std::size_t l);

}  // namespace lrv

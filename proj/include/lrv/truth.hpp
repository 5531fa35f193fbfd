#pragma once

#include <cstddef>
#include <vector>

#include "lrv/process_sim.hpp"

namespace lrv {

inline constexpr double kDefaultTruthTol = 1e-12;

/// Analytic targets for one ARMA(1,1) law.
struct TruthSet {
    std::vector<double> gamma;  ///< gamma[k] = Cov(X_1, X_{1+k}), k = 0..n-1
    double sigma_sq_finite_n = 0.0;
    double sigma_sq = 0.0;
    double sigma_F_sq = 0.0;
};

/// Autocovariance gamma_k of the stationary ARMA(1,1) process.
[[nodiscard]] double arma_autocov(const ArmaSpec& spec, std::size_t k);

/// Var(n^{-1/2} sum X_i) = gamma_0 + (2/n) sum_{k=2..n} gamma_{k-1} (n+1-k).
/// @throws std::invalid_argument if n == 0.
[[nodiscard]] double finite_n_variance(const ArmaSpec& spec, std::size_t n);

/// gamma_0 + 2 sum_{k>=1} gamma_k, truncated once the geometric tail bound drops below `tol`.
[[nodiscard]] double sigma_sq_limit(const ArmaSpec& spec, double tol = kDefaultTruthTol);

/// Closed form s^2 (1 + ma)^2 / (1 - ar)^2 of the same quantity.
[[nodiscard]] double sigma_sq_closed_form(const ArmaSpec& spec);

/// Cov(F(X), F(Y)) = arcsin(rho / 2) / (2 pi) for jointly Gaussian X, Y with correlation rho.
[[nodiscard]] double spearman_cov(double rho);

/// Var(F(X_1)) + 2 sum_{k>=2} Cov(F(X_1), F(X_k)) under the Gaussian ARMA law.
[[nodiscard]] double sigma_F_sq(const ArmaSpec& spec, double tol = kDefaultTruthTol);

[[nodiscard]] TruthSet make_truth(const ArmaSpec& spec, std::size_t n,
                                  double tol = kDefaultTruthTol);

}  // namespace lrv

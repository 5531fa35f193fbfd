#include "lrv/truth.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lrv {

namespace {

double gamma0(const ArmaSpec& s) {
    const double phi = s.ar();
    const double theta = s.ma();
    const double var = s.innovation_sd() * s.innovation_sd();
    return var * (1.0 + 2.0 * phi * theta + theta * theta) / (1.0 - phi * phi);
}

double gamma1(const ArmaSpec& s) {
    const double phi = s.ar();
    const double theta = s.ma();
    const double var = s.innovation_sd() * s.innovation_sd();
    return var * (1.0 + phi * theta) * (phi + theta) / (1.0 - phi * phi);
}

// Sums term(rho_k) for lags k = 1, 2, ... while the bound |gamma_k| / (gamma_0 (1 - |phi|)) on the
// remaining tail (relative to gamma_0) is at least `tol`.
template <typename Term>
double geometric_tail_sum(const ArmaSpec& spec, double tol, Term term) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("truncation tolerance must be positive");
    }
    const double g0 = gamma0(spec);
    const double phi = spec.ar();
    double g = gamma1(spec);
    double total = 0.0;
    while (std::abs(g) / (g0 * (1.0 - std::abs(phi))) >= tol) {
        total += term(g / g0);
        g *= phi;
    }
    return total;
}

}  // namespace

double arma_autocov(const ArmaSpec& spec, std::size_t k) {
    if (k == 0) {
        return gamma0(spec);
    }
    return gamma1(spec) * std::pow(spec.ar(), static_cast<double>(k - 1));
}

double finite_n_variance(const ArmaSpec& spec, std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("sample size must be at least 1");
    }
    const double nd = static_cast<double>(n);
    double weighted = 0.0;
    double g = gamma1(spec);
    for (std::size_t h = 1; h < n; ++h) {
        weighted += g * (nd - static_cast<double>(h));
        g *= spec.ar();
    }
    return gamma0(spec) + 2.0 * weighted / nd;
}

double sigma_sq_limit(const ArmaSpec& spec, double tol) {
    const double g0 = gamma0(spec);
    return g0 + 2.0 * g0 * geometric_tail_sum(spec, tol, [](double rho) { return rho; });
}

double sigma_sq_closed_form(const ArmaSpec& spec) {
    const double s = spec.innovation_sd();
    const double num = s * (1.0 + spec.ma());
    const double den = 1.0 - spec.ar();
    return num * num / (den * den);
}

double spearman_cov(double rho) {
    if (!(std::abs(rho) <= 1.0)) {
        throw std::invalid_argument("correlation must lie in [-1, 1]");
    }
    return std::asin(rho / 2.0) / (2.0 * std::numbers::pi);
}

double sigma_F_sq(const ArmaSpec& spec, double tol) {
    // rho_k = Corr(X_1, X_k) = gamma_{k-1} / gamma_0; the k = 1 term is Var(F(X_1)) = 1/12.
    return 1.0 / 12.0 + 2.0 * geometric_tail_sum(spec, tol, [](double rho) { return spearman_cov(rho); });
}

TruthSet make_truth(const ArmaSpec& spec, std::size_t n, double tol) {
    TruthSet t;
    t.gamma.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        t.gamma[k] = arma_autocov(spec, k);
    }
    t.sigma_sq_finite_n = finite_n_variance(spec, n);
    t.sigma_sq = sigma_sq_limit(spec, tol);
    t.sigma_F_sq = sigma_F_sq(spec, tol);
    return t;
}

}  // namespace lrv

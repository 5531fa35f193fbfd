#include "lrv/process_sim.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace lrv {

Series::Series(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw std::invalid_argument("series must contain at least one observation");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw std::invalid_argument("series value at index " + std::to_string(i) +
                                        " is not finite");
        }
    }
}

ArmaSpec::ArmaSpec(double ar, double ma, double innovation_sd)
    : ar_(ar), ma_(ma), innovation_sd_(innovation_sd) {
    if (!std::isfinite(ar) || !(std::abs(ar) < 1.0)) {
        throw std::invalid_argument("ARMA(1,1) requires |ar| < 1, got ar = " + std::to_string(ar));
    }
    if (!std::isfinite(ma)) {
        throw std::invalid_argument("MA coefficient must be finite");
    }
    if (!std::isfinite(innovation_sd) || !(innovation_sd > 0.0)) {
        throw std::invalid_argument("innovation_sd must be positive");
    }
}

std::vector<ArmaSpec> reference_specs() {
    return {
        {0.5, 0.0},  {0.1, 0.0},  {-0.1, 0.0}, {-0.8, 0.0}, {0.0, 0.8},  {0.0, 0.1},
        {0.0, -0.8}, {0.0, -0.1}, {0.5, 0.5},  {-0.5, -0.5}, {0.0, 0.0},
    };
}

namespace {

// (0, 1): the half-ulp offset keeps log() away from zero.
double open_unit(std::mt19937_64& engine) {
    return (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::vector<double> gaussian_stream(std::uint64_t seed, std::size_t count) {
    std::vector<double> out(count);
    std::mt19937_64 engine(seed);
    std::size_t i = 0;
    while (i < count) {
        const double u1 = open_unit(engine);
        const double u2 = open_unit(engine);
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        out[i++] = radius * std::cos(angle);
        if (i < count) {
            out[i++] = radius * std::sin(angle);
        }
    }
    return out;
}

Series simulate_arma(const ArmaSpec& spec, const SimConfig& cfg) {
    if (cfg.n == 0) {
        throw std::invalid_argument("simulation length n must be at least 1");
    }
    std::vector<double> eps = gaussian_stream(cfg.seed, cfg.burn_in + cfg.n);
    const double phi = spec.ar();
    const double theta = spec.ma();
    const double scale = spec.innovation_sd();

    std::vector<double> x(cfg.n);
    double prev_x = 0.0;
    double prev_eps = 0.0;
    for (std::size_t t = 0; t < eps.size(); ++t) {
        const double e = scale * eps[t];
        const double cur = phi * prev_x + e + theta * prev_eps;
        if (t >= cfg.burn_in) {
            x[t - cfg.burn_in] = cur;
        }
        prev_x = cur;
        prev_eps = e;
    }
    return Series(std::move(x));
}

}  // namespace lrv

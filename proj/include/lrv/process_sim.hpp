#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lrv {

/// An ordered, non-empty sample X_1..X_n of finite reals.
class Series {
public:
    /// @throws std::invalid_argument if `values` is empty or holds a non-finite value.
    explicit Series(std::vector<double> values);

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }

    operator std::span<const double>() const noexcept { return values_; }  // NOLINT

    [[nodiscard]] std::vector<double> release() && { return std::move(values_); }

private:
    std::vector<double> values_;
};

/**
 * @brief ARMA(1,1) law X_t = ar * X_{t-1} + e_t + ma * e_{t-1}, e_t ~ N(0, innovation_sd^2).
 *
 * Construction rejects |ar| >= 1 and non-positive innovation_sd, so every
 * ArmaSpec in hand describes a causal stationary process.
 */
class ArmaSpec {
public:
    ArmaSpec(double ar, double ma, double innovation_sd = 1.0);

    [[nodiscard]] double ar() const noexcept { return ar_; }
    [[nodiscard]] double ma() const noexcept { return ma_; }
    [[nodiscard]] double innovation_sd() const noexcept { return innovation_sd_; }

    friend bool operator==(const ArmaSpec&, const ArmaSpec&) = default;

private:
    double ar_;
    double ma_;
    double innovation_sd_;
};

struct SimConfig {
    std::size_t n = 500;
    std::size_t burn_in = 1000;
    std::uint64_t seed = 0;
};

/// The eleven ARMA(1,1) settings of the reference simulation design, in table order.
[[nodiscard]] std::vector<ArmaSpec> reference_specs();

/// splitmix64 finalizer; a bijection on 64-bit words.
[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/**
 * @brief Child seed for replication `replication` of cell `cell` under `master`.
 *
 * mix(m, c, r) = splitmix64(splitmix64(splitmix64(m) ^ c) ^ r). Each stage is a
 * bijection, so distinct (c, r) under one master never collide within a stage,
 * and the value does not depend on the order in which replications are run.
 */
[[nodiscard]] constexpr std::uint64_t mix_seed(std::uint64_t master, std::uint64_t cell,
                                               std::uint64_t replication) noexcept {
    return splitmix64(splitmix64(splitmix64(master) ^ cell) ^ replication);
}

/**
 * @brief `count` standard normal draws determined entirely by `seed`.
 *
 * Uniforms come from std::mt19937_64 (whose output sequence is fixed by the C++
 * standard) mapped to (0,1) with 53-bit resolution; normals from the Box-Muller
 * transform, consuming two uniforms per pair. Output is bit-identical across
 * runs, platforms with IEEE doubles and the same libm, and thread counts.
 */
[[nodiscard]] std::vector<double> gaussian_stream(std::uint64_t seed, std::size_t count);

/// Simulates `cfg.n` values of `spec` after discarding `cfg.burn_in` values from a zero start.
[[nodiscard]] Series simulate_arma(const ArmaSpec& spec, const SimConfig& cfg);

}  // namespace lrv

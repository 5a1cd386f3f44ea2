#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "pettiest/core_stats.hpp"

namespace pettiest {

/// 64-bit Mersenne Twister with a portable normal sampler.
///
/// Streams: `Rng::stream(seed, k)` seeds the engine with
/// splitmix64(seed ^ splitmix64(k + 1)), so replication k of a run draws from
/// its own sequence regardless of the order replications execute in.
/// Normals come from the Box-Muller transform on 53-bit uniforms, so a given
/// seed produces the same numbers with any standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static Rng stream(std::uint64_t seed, std::uint64_t index);

    /// Uniform on [0, 1).
    double uniform();
    double normal();

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Lower-triangular L with L * L^T = s. Retries once with 1e-10 added to the
/// diagonal before reporting a numerical failure.
Matrix cholesky(const SymmetricMatrix& s);

/// n rows i.i.d. N(0, sigma), computed as L z for standard normal z.
Dataset sample_mvn(std::size_t n, const SymmetricMatrix& sigma, Rng& rng);
Dataset sample_mvn(std::size_t n, const SymmetricMatrix& sigma, std::uint64_t seed);

}  // namespace pettiest

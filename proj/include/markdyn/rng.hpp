#pragma once

#include <cstdint>
#include <random>

#include "markdyn/common.hpp"

namespace markdyn {

/// Deterministic random source. All distribution mappings are implemented
/// by hand on top of the raw mt19937_64 stream, so a given seed produces
/// the same draws on every platform and every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). Modulo bias is irrelevant at the sizes used here.
    std::uint64_t integer(std::uint64_t n) { return gen_() % n; }

    /// Standard normal via Box-Muller (one value per pair of uniforms).
    double normal() {
        const double u1 = 1.0 - uniform(); // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    /// Complex standard normal, E|z|^2 = 1.
    Complex cnormal() { return {normal() * M_SQRT1_2, normal() * M_SQRT1_2}; }

private:
    std::mt19937_64 gen_;
};

/// Random Hermitian matrix with Gaussian entries, (G + G†)/2.
Matrix random_hermitian(Rng& rng, Eigen::Index dim);

/// Haar-random unitary: QR of a complex Ginibre matrix with the R-diagonal
/// phase normalization.
Matrix random_unitary(Rng& rng, Eigen::Index dim);

/// Random normalized state vector.
Vector random_pure_state(Rng& rng, Eigen::Index dim);

} // namespace markdyn

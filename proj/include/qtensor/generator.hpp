#pragma once

#include <cstdint>
#include <optional>

#include "qtensor/quat_tensor.hpp"

namespace qtensor {

// SplitMix64: the fixed, versioned PRNG behind every generated fixture
// (generator version 1). Other implementations can reproduce streams from
// the constants alone.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [-1, 1): top 53 bits of the next output.
    double next_symmetric() {
        return 2.0 * (static_cast<double>(next() >> 11) * 0x1.0p-53) - 1.0;
    }

private:
    std::uint64_t state_;
};

// Streamed quaternion source: the master seed is split into four component
// streams (w, x, y, z), one SplitMix64 each; quaternion t takes the t-th
// output of every stream. Components are uniform in [-1, 1).
class QuaternionStream {
public:
    explicit QuaternionStream(std::uint64_t seed);
    Quaternion next();

private:
    SplitMix64 w_, x_, y_, z_;
};

// Dense tensor with entries drawn in storage order.
QuatTensor generate_uniform(const Shape& left, const Shape& right,
                            std::uint64_t seed);

// Product of a (prod(left) x rank) and a (rank x prod(right)) random factor,
// drawn row-major in that order from the same stream; the flattening has
// rank min(rank, prod(left), prod(right)) almost surely.
QuatTensor generate_rank(const Shape& left, const Shape& right, std::int64_t rank,
                         std::uint64_t seed);

// Uniform (or rank-bounded) square tensor symmetrized to (T + T^{eta*})/2.
QuatTensor generate_eta_hermitian(const Shape& shape, ImaginaryUnit eta,
                                  std::uint64_t seed,
                                  std::optional<std::int64_t> rank = std::nullopt);

}  // namespace qtensor

/*
 * random.hpp — deterministic uniform draws for randomized checks.
 *
 * Values are assembled from the raw mt19937_64 bit stream (53 high bits
 * scaled into [0, 1)) instead of std::uniform_real_distribution, whose
 * algorithm is implementation-defined. Same seed, same draws, on every
 * platform; verification reports stay byte-identical.
 */

#pragma once

#include <cstdint>
#include <random>

namespace isingq {

class UniformSampler {
public:
    explicit UniformSampler(std::uint64_t seed) : gen_(seed) {}

    /// Next draw from [0, 1).
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Next draw from [lo, hi).
    double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

    /// Next integer from {lo, ..., hi}, endpoints included.
    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(unit() * static_cast<double>(hi - lo + 1));
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace isingq

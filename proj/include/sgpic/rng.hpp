#pragma once

#include <cstdint>
#include <limits>

namespace sgpic {

/// SplitMix64 bit generator; satisfies UniformRandomBitGenerator so it plugs
/// into the <random> distributions.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

enum class Stream : std::uint64_t {
    InitPosition = 1,
    InitVelocity = 2,
    InitBeam = 3,
    CollisionSelect = 4,
    CollisionNormal = 5,
};

/// Independent stream for one (seed, particle, step, purpose) tuple.
SplitMix64 particle_stream(std::uint64_t seed, std::uint64_t particle, std::uint64_t step,
                           Stream purpose);

/// Uniform on [0,1) with 53 random bits.
double uniform01(SplitMix64& gen);

double standard_normal(SplitMix64& gen);

/// Van der Corput radical inverse of `index` in `base`, in (0,1) for index >= 1.
double radical_inverse(std::uint64_t index, unsigned base);

/// Inverse of the standard normal CDF.
double normal_quantile(double p);

} // namespace sgpic

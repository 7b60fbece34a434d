#include "sgpic/rng.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <numbers>
#include <random>

namespace sgpic {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v)
{
    SplitMix64 g(h ^ (v + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2)));
    return g();
}

} // namespace

SplitMix64 particle_stream(std::uint64_t seed, std::uint64_t particle, std::uint64_t step,
                           Stream purpose)
{
    std::uint64_t h = mix(0x5EEDULL, seed);
    h = mix(h, particle);
    h = mix(h, step);
    h = mix(h, static_cast<std::uint64_t>(purpose));
    return SplitMix64(h);
}

double uniform01(SplitMix64& gen)
{
    return std::uniform_real_distribution<double>(0.0, 1.0)(gen);
}

double standard_normal(SplitMix64& gen)
{
    return std::normal_distribution<double>(0.0, 1.0)(gen);
}

double radical_inverse(std::uint64_t index, unsigned base)
{
    const double inv_base = 1.0 / base;
    double factor = inv_base;
    double result = 0.0;
    while (index > 0) {
        result += static_cast<double>(index % base) * factor;
        index /= base;
        factor *= inv_base;
    }
    return result;
}

double normal_quantile(double p)
{
    return std::numbers::sqrt2 * boost::math::erf_inv(2.0 * p - 1.0);
}

} // namespace sgpic

#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace uavloc {

/// SplitMix64. Small, fast, and bit-identical on every platform, which the
/// simulator's reproducibility contract depends on (the standard library's
/// distributions are not portable across implementations).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_unit() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller. u1 is kept away from 0 so the result
    /// is always finite (|z| <= ~8.6).
    double next_gaussian() {
        const double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
        const double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793 * u2);
    }

private:
    std::uint64_t state_;
};

/// FNV-1a, used to fold station ids into stream seeds.
inline std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

/// SplitMix64 finalizer, used as a mixing step.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Derives one stream seed from (scenario seed, station, emission index).
/// Streams are keyed by content, not iteration order, so parallel and serial
/// runs produce identical samples.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t station_hash,
                                 std::uint64_t emission_index) {
    std::uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ull);
    h = mix64(h ^ (station_hash + 0x9e3779b97f4a7c15ull));
    h = mix64(h ^ (emission_index + 0x9e3779b97f4a7c15ull));
    return h;
}

}  // namespace uavloc

#pragma once

#include <cmath>
#include <cstdint>

namespace raman3d {

/// Counter-based generator built on the splitmix64 finalizer. Every draw
/// is a pure function of (seed, stream, counter), so batches can be
/// evaluated in any order or in parallel and still produce bit-identical
/// results.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(mix(seed ^ mix(stream * 0xda942042e4dd58b5ULL))) {}

    std::uint64_t bits(std::uint64_t counter) const {
        return mix(key_ + 0x9e3779b97f4a7c15ULL * (counter + 1));
    }

    /// uniform in (0, 1]
    double uniform(std::uint64_t counter) const {
        return (static_cast<double>(bits(counter) >> 11) + 1.0) * 0x1.0p-53;
    }

    /// standard-normal pair via Box-Muller from counters (c, c+1)
    void normal_pair(std::uint64_t counter, double& n0, double& n1) const {
        const double u1 = uniform(counter);
        const double u2 = uniform(counter + 1);
        const double r = std::sqrt(-2.0 * std::log(u1));
        n0 = r * std::cos(2.0 * M_PI * u2);
        n1 = r * std::sin(2.0 * M_PI * u2);
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t key_;
};

} // namespace raman3d

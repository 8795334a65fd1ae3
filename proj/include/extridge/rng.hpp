#pragma once

#include <cmath>
#include <cstdint>

namespace extridge {

/// Addresses one reproducible random stream. Identical (seed, stream) pairs
/// reproduce identical draw sequences regardless of thread schedule.
struct RngSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

// Stream index spaces used by the harness. Trials occupy the low half of the
// stream space; spectrum pooling uses the high half so the empirical and
// theoretical sides of an experiment never share a stream.
inline constexpr std::uint64_t kSpectrumStreamBase = 0x8000000000000000ULL;

/// Counter-based generator: output i is a 64-bit hash of (key, i) where key
/// mixes seed and stream. Splittable and replayable; normals come from
/// Box-Muller on fixed counter pairs, so the k-th normal of a stream is the
/// same value on every run.
class CounterRng {
public:
    explicit CounterRng(RngSpec spec)
        : key_(mix64(mix64(spec.seed) ^ spec.stream)) {}

    /// Uniform double in the open interval (0, 1).
    double uniform() {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; consumes exactly two counter values.
    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    double normal(double stddev) { return stddev * normal(); }

private:
    static std::uint64_t mix64(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t next() {
        return mix64(key_ ^ (counter_++ * 0xda942042e4dd58b5ULL));
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace extridge

#pragma once

#include <cstdint>
#include <random>

namespace prefatt {

// SplitMix64 finalizer, used for seed scrambling and stream derivation.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Seed of replication stream k under a master seed. Streams are decorrelated
// by scrambling both inputs, so replications may run in any order and on any
// number of threads without changing results.
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(master ^ splitmix64(stream + 1));
}

/// mt19937_64 with hand-made uniform doubles. The engine itself is fully
/// specified by the standard and therefore reproducible across platforms;
/// std::uniform_real_distribution is not, so we draw from the raw bits.
class RandomSource {
  public:
    explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

    static constexpr const char* name() { return "mt19937_64"; }

    std::uint64_t bits() { return engine_(); }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; never returns zero.
    double uniform_pos() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

  private:
    std::mt19937_64 engine_;
};

}  // namespace prefatt

#pragma once

#include <cstdint>
#include <random>

namespace hybridvec {

// Seeded random source. Wraps std::mt19937_64 (whose output sequence is
// fixed by the standard) and maps to doubles/ranges with explicit
// arithmetic, so the same seed gives the same stream on every platform.
// std::uniform_*_distribution is avoided: its algorithm is
// implementation-defined.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform in [0, n). Modulo bias is below 1e-18 for the small n used here.
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }

    // Stream derivation for worker threads: mixes (seed, stream) through
    // splitmix64 so worker streams are decorrelated but reproducible.
    static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace hybridvec

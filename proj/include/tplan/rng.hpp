#pragma once

// Deterministic randomness shared by the generator, the agent and the
// benchmark harness.
//
// Engine: std::mt19937_64, whose output sequence is pinned by the standard
// and therefore identical across toolchains. Bounded draws go through the
// helpers below instead of <random> distributions, whose output is
// implementation-defined.

#include <cstdint>
#include <random>

namespace tplan {

// splitmix64 mixing step; used to derive independent child seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed streams keep the stochastic components decoupled: reseeding one
// (say, training scenarios) never shifts the draws of another.
enum class SeedStream : std::uint64_t {
  kTrainScenarios = 1,
  kEvalScenarios = 2,
  kWeightInit = 3,
  kAgentActions = 4,
};

inline std::uint64_t derive_seed(std::uint64_t master, SeedStream stream,
                                 std::uint64_t index) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ static_cast<std::uint64_t>(stream));
  return splitmix64(h ^ index);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Unbiased draw in [0, range) via Lemire's multiply-shift rejection.
  std::uint64_t bounded(std::uint64_t range) {
    unsigned __int128 m =
        static_cast<unsigned __int128>(next_u64()) * range;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < range) {
      std::uint64_t threshold = (0 - range) % range;
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * range;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform integer in [lo, hi], inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    bounded(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // Uniform double in [0, 1) with 53 random mantissa bits.
  double uniform01() { return (next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tplan

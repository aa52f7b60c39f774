#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace fgt {

//! Validated nonnegative income observations X_1..X_n, in sampling order.
class IncomeSample {
public:
  // Throws EmptySampleError when values is empty and InvalidArgumentError
  // when any value is negative or non-finite.
  explicit IncomeSample(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

private:
  std::vector<double> values_;
};

//! splitmix64 counter generator (Steele/Lea/Flood mixer). Fully specified,
//! so sequences are bit-identical across platforms; used for every seeded
//! draw in the library. Identifier reported as "splitmix64/u53".
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) noexcept
    : state_(seed)
  {
  }

  std::uint64_t next_u64() noexcept
  {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // Uniform double in [0, 1) from the top 53 bits.
  double next_double() noexcept
  {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  static std::uint64_t mix(std::uint64_t z) noexcept
  {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

private:
  std::uint64_t state_;
};

inline constexpr const char* kGeneratorAlgorithm = "splitmix64/u53";
inline constexpr const char* kSeedDerivation =
  "seed_r = splitmix64_mix(splitmix64_mix(base_seed) + r), r = 1..R";

// Deterministic, splittable per-replication seed: independent of thread
// count and evaluation order.
inline std::uint64_t derive_replication_seed(std::uint64_t base_seed,
                                             std::uint64_t replication) noexcept
{
  return SplitMix64::mix(SplitMix64::mix(base_seed) + replication);
}

} // namespace fgt

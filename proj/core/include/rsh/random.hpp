#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace rsh {

/// Stream of uniform draws on [0, 1). The only source of nondeterminism in
/// every transform; single owner, never shared between threads.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual double next_uniform() = 0;
};

/// xoshiro256** seeded through splitmix64. Draws are the top 53 bits of each
/// output scaled by 2^-53. The algorithm is part of the manifest format and
/// must not change between releases.
class SeededSource final : public RandomSource {
 public:
  explicit SeededSource(std::uint64_t seed) noexcept;

  double next_uniform() override;
  std::uint64_t next_u64() noexcept;

 private:
  std::array<std::uint64_t, 4> state_;
};

/// Forwards draws from another source and keeps a copy of each value.
class RecordingSource final : public RandomSource {
 public:
  explicit RecordingSource(RandomSource& inner) noexcept : inner_(inner) {}

  double next_uniform() override;
  const std::vector<double>& draws() const noexcept { return draws_; }

 private:
  RandomSource& inner_;
  std::vector<double> draws_;
};

/// splitmix64 output function applied to a single word.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// lo + u * (hi - lo) for the next draw u; result in [lo, hi), or exactly lo
/// when lo == hi. Throws RangeInverted when lo > hi.
double uniform_in(RandomSource& rng, double lo, double hi);

inline constexpr const char* kPrngName = "xoshiro256** (splitmix64 seeding, 53-bit doubles)";

}  // namespace rsh

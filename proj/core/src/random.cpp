#include "rsh/random.hpp"

#include <cmath>
#include <string>

#include "rsh/error.hpp"

namespace rsh {
namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SeededSource::SeededSource(std::uint64_t seed) noexcept {
  // splitmix64 stream fills the state; it never yields four zero words.
  std::uint64_t s = seed;
  for (auto& word : state_) {
    word = mix64(s);
    s += 0x9e3779b97f4a7c15ULL;
  }
}

std::uint64_t SeededSource::next_u64() noexcept {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double SeededSource::next_uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RecordingSource::next_uniform() {
  const double u = inner_.next_uniform();
  draws_.push_back(u);
  return u;
}

double uniform_in(RandomSource& rng, double lo, double hi) {
  if (lo > hi) {
    throw Error(ErrorCode::RangeInverted,
                "range lower bound " + std::to_string(lo) + " exceeds upper bound " +
                    std::to_string(hi));
  }
  const double u = rng.next_uniform();
  const double value = lo + u * (hi - lo);
  // lo + u*(hi-lo) can round up to hi for u close to 1.
  if (value >= hi && hi > lo) return std::nextafter(hi, lo);
  return value;
}

}  // namespace rsh

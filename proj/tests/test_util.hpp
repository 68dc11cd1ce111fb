// Deterministic helpers shared by the test binaries: a tiny seeded PRNG
// (so expected values never depend on the standard library implementation)
// and random-object factories built on it.
#pragma once

#include <cstdint>
#include <vector>

#include "beauville/perm.hpp"

namespace testutil {

// xorshift64*: fast, reproducible, good enough for shuffling test inputs.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545f4914f6cdd1dull;
  }

  /// Uniform-ish value in [0, n).
  std::uint64_t below(std::uint64_t n) { return next() % n; }

private:
  std::uint64_t state_;
};

inline beauville::Perm random_perm(Rng& rng, std::uint32_t degree) {
  std::vector<std::uint32_t> images(degree);
  for (std::uint32_t i = 0; i < degree; ++i) images[i] = i + 1;
  for (std::uint32_t i = degree - 1; i > 0; --i) {
    const auto j = static_cast<std::uint32_t>(rng.below(i + 1));
    std::swap(images[i], images[j]);
  }
  return beauville::Perm::from_images(images);
}

}  // namespace testutil

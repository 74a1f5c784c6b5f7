#pragma once

#include <cstdint>

#include "albert/linalg.hpp"
#include "albert/rational.hpp"

namespace albert {

// Deterministic splitmix64 stream; identical output on every platform, so
// seeded suites reproduce byte-for-byte.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t n) { return next() % n; }

  long range(long lo, long hi) { // inclusive
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  Rng split(std::uint64_t stream) { return Rng(next() ^ (0xA0761D6478BD642Full * (stream + 1))); }

  // Sampling convention used by every randomized suite: numerators uniform in
  // {-9,...,9}, denominators uniform in {1,2,3}.
  Rational coord() { return Rational(range(-9, 9), range(1, 3)); }

  linalg::Vec vec(std::size_t n) {
    linalg::Vec v(n);
    for (auto& x : v) x = coord();
    return v;
  }

  linalg::Vec nonzero_vec(std::size_t n) {
    for (int tries = 0; tries < 256; ++tries) {
      auto v = vec(n);
      if (!linalg::is_zero(v)) return v;
    }
    auto v = linalg::zero_vec(n);
    v[0] = Rational(1);
    return v;
  }

private:
  std::uint64_t state_;
};

} // namespace albert

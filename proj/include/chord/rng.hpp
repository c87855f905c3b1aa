#pragma once

#include <cstdint>
#include <random>

namespace chord {

// Seeded RNG with hand-rolled bounded sampling, so sampled runs reproduce
// byte-identically across standard library implementations
// (std::uniform_int_distribution has no such guarantee).
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next() { return eng_(); }

  // Uniform in [0, n) by rejection.
  uint64_t below(uint64_t n) {
    if (n == 0) return 0;
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return v % n;
  }

  int range(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace chord

#pragma once

#include <cstdint>
#include <vector>

namespace stw {

// Deterministic splitmix64 generator. All sampled checks route randomness
// through this so that reports are reproducible across platforms.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). n = 0 returns 0.
  uint64_t below(uint64_t n) {
    if (n <= 1) return 0;
    // Rejection-free modulo is fine here: n is tiny compared to 2^64.
    return next() % n;
  }

  int below_int(int n) { return static_cast<int>(below(static_cast<uint64_t>(n))); }

  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[below(xs.size())];
  }

  Rng fork() { return Rng(next() ^ 0xd1b54a32d192ed03ULL); }

 private:
  uint64_t state_;
};

}  // namespace stw

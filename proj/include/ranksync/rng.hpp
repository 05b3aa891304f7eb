#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace ranksync {

// Deterministic 64-bit generator (splitmix64).  Self-contained so that seeded
// runs reproduce bit-identically on any platform; per-trial streams are derived
// from (master seed, trial index) and never share state.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform on [0, bound); rejection sampling keeps it exact.
  uint64_t uniform_u64(uint64_t bound);

  // Uniform on [lo, hi], both ends inclusive.
  int uniform_int(int lo, int hi);

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform permutation of {1, ..., n} by Fisher-Yates.
  std::vector<int> permutation(int n);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = uniform_u64(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  // Independent stream for one trial of a seeded experiment.
  static Rng for_trial(uint64_t master_seed, uint64_t trial);

 private:
  uint64_t state_;
};

}  // namespace ranksync

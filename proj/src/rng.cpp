#include "ranksync/rng.hpp"

#include <stdexcept>

namespace ranksync {

uint64_t Rng::uniform_u64(uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_u64 bound must be positive");
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return v % bound;
}

int Rng::uniform_int(int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("uniform_int with empty range");
  return lo + static_cast<int>(uniform_u64(static_cast<uint64_t>(hi) - lo + 1));
}

std::vector<int> Rng::permutation(int n) {
  if (n < 0) throw std::invalid_argument("negative permutation length");
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i + 1;
  shuffle(v);
  return v;
}

Rng Rng::for_trial(uint64_t master_seed, uint64_t trial) {
  // Scramble the master seed once, then offset it per trial so streams for
  // distinct trials never overlap in splitmix64's counter sequence.
  Rng scrambler(master_seed);
  const uint64_t base = scrambler.next();
  return Rng(base ^ (0x9e3779b97f4a7c15ull * (trial + 1)));
}

}  // namespace ranksync

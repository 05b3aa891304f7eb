#include "ranksync/errors.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ranksync {

std::vector<int> delete_positions(std::span<const int> seq, std::span<const int> positions) {
  const int n = static_cast<int>(seq.size());
  std::vector<uint8_t> drop(static_cast<size_t>(n) + 1, 0);
  int prev = 0;
  for (int pos : positions) {
    if (pos < 1 || pos > n) throw std::out_of_range("deletion position " + std::to_string(pos));
    if (pos <= prev) throw std::invalid_argument("deletion positions must ascend");
    prev = pos;
    drop[pos] = 1;
  }
  std::vector<int> kept;
  kept.reserve(seq.size() - positions.size());
  for (int pos = 1; pos <= n; ++pos)
    if (!drop[pos]) kept.push_back(seq[pos - 1]);
  return kept;
}

Permutation apply_translocation(const Permutation& sigma, int from, int to) {
  const int n = sigma.size();
  if (from < 1 || from > n || to < 1 || to > n)
    throw std::out_of_range("translocation endpoint outside [1, " + std::to_string(n) + "]");
  if (from == to) throw std::invalid_argument("translocation must move the element");
  std::vector<int> v = sigma.values();
  const int moved = v[from - 1];
  v.erase(v.begin() + (from - 1));
  v.insert(v.begin() + (to - 1), moved);
  return Permutation(std::move(v));
}

Permutation apply_transposition(const Permutation& sigma, int a, int b) {
  const int n = sigma.size();
  if (a < 1 || a > n || b < 1 || b > n)
    throw std::out_of_range("swap position outside [1, " + std::to_string(n) + "]");
  if (a == b) throw std::invalid_argument("swap needs two distinct positions");
  std::vector<int> v = sigma.values();
  std::swap(v[a - 1], v[b - 1]);
  return Permutation(std::move(v));
}

PartialPermutation apply_error(const Permutation& sigma, const ErrorPattern& e) {
  const int n = sigma.size();
  return std::visit(
      [&](const auto& p) -> PartialPermutation {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Deletions>) {
          return {delete_positions(sigma.values(), p.positions), n};
        } else if constexpr (std::is_same_v<T, BlockDeletion>) {
          std::vector<int> positions(p.span);
          for (int i = 0; i < p.span; ++i) positions[i] = p.start + i;
          return {delete_positions(sigma.values(), positions), n};
        } else if constexpr (std::is_same_v<T, Translocation>) {
          return apply_translocation(sigma, p.from, p.to).as_partial();
        } else {
          return apply_transposition(sigma, p.a, p.b).as_partial();
        }
      },
      e);
}

ErrorPattern sample_error(ErrorModel model, int n, int d, Rng& rng) {
  switch (model) {
    case ErrorModel::Deletions: {
      if (d < 1 || d > n) throw std::invalid_argument("deletion count outside [1, n]");
      // Uniform d-subset of positions via partial Fisher-Yates.
      std::vector<int> pool(n);
      for (int i = 0; i < n; ++i) pool[i] = i + 1;
      for (int i = 0; i < d; ++i) {
        const int j = i + static_cast<int>(rng.uniform_u64(n - i));
        std::swap(pool[i], pool[j]);
      }
      std::vector<int> positions(pool.begin(), pool.begin() + d);
      std::sort(positions.begin(), positions.end());
      return Deletions{std::move(positions)};
    }
    case ErrorModel::BlockDeletions: {
      if (d < 1 || d > n) throw std::invalid_argument("block span outside [1, n]");
      const int start = 1 + static_cast<int>(rng.uniform_u64(n - d + 1));
      return BlockDeletion{start, d};
    }
    case ErrorModel::Translocations: {
      if (n < 2) throw std::invalid_argument("translocation needs length at least 2");
      // Moving position i to i-1 rearranges identically to moving i-1 to i,
      // so of the n(n-1) ordered pairs only (n-1)^2 distinct outcomes exist.
      // Rejecting from == to+1 keeps exactly one representative of each
      // adjacent swap and leaves everything else untouched: uniform over
      // outcomes.
      while (true) {
        const int from = 1 + static_cast<int>(rng.uniform_u64(n));
        const int to = 1 + static_cast<int>(rng.uniform_u64(n));
        if (from == to || from == to + 1) continue;
        return Translocation{from, to};
      }
    }
    case ErrorModel::Transpositions: {
      if (n < 2) throw std::invalid_argument("swap needs length at least 2");
      const int a = 1 + static_cast<int>(rng.uniform_u64(n));
      int b;
      do {
        b = 1 + static_cast<int>(rng.uniform_u64(n));
      } while (b == a);
      return Transposition{std::min(a, b), std::max(a, b)};
    }
  }
  throw std::logic_error("unhandled error model");
}

std::string describe(const ErrorPattern& e) {
  std::ostringstream os;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Deletions>) {
          os << "delete positions " << seq_str(p.positions);
        } else if constexpr (std::is_same_v<T, BlockDeletion>) {
          os << "delete block [" << p.start << ", " << p.start + p.span - 1 << "]";
        } else if constexpr (std::is_same_v<T, Translocation>) {
          os << "move position " << p.from << " to " << p.to;
        } else {
          os << "swap positions " << p.a << " and " << p.b;
        }
      },
      e);
  return os.str();
}

}  // namespace ranksync

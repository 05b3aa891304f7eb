#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ranksync/permutation.hpp"
#include "ranksync/rng.hpp"

namespace ranksync {

// Corruption models applied to the transmitter's reference permutation.
// Positions are 1-based.

struct Deletions {
  std::vector<int> positions;  // ascending, distinct
};

struct BlockDeletion {
  int start = 0;  // deletes positions [start, start + span - 1]
  int span = 0;
};

// Remove the element at `from` and reinsert it at `to` (the intervening
// elements slide by one).  from != to.
struct Translocation {
  int from = 0;
  int to = 0;
};

// Swap the elements at positions a < b.
struct Transposition {
  int a = 0;
  int b = 0;
};

using ErrorPattern = std::variant<Deletions, BlockDeletion, Translocation, Transposition>;

std::vector<int> delete_positions(std::span<const int> seq, std::span<const int> positions);

Permutation apply_translocation(const Permutation& sigma, int from, int to);
Permutation apply_transposition(const Permutation& sigma, int a, int b);
PartialPermutation apply_error(const Permutation& sigma, const ErrorPattern& e);

enum class ErrorModel { Deletions, BlockDeletions, Translocations, Transpositions };

// Uniform draws: deletion position sets over all C(n,d) subsets, block starts
// over [1, n-d+1], transpositions over all C(n,2) pairs, and translocations
// over the (n-1)^2 distinct rearrangements (the two adjacent-move index pairs
// that produce the same swap are collapsed to one outcome).
ErrorPattern sample_error(ErrorModel model, int n, int d, Rng& rng);

std::string describe(const ErrorPattern& e);

}  // namespace ranksync

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ranksync {

// All positions and symbols are 1-based at API boundaries.  Symbols live in
// the universe [1, n]; n is always explicit and never inferred from a partial
// sequence's length.

// A sequence of distinct symbols drawn from [1, n] (possibly all of them).
class PartialPermutation {
 public:
  PartialPermutation() = default;
  PartialPermutation(std::vector<int> values, int universe);

  int universe() const { return universe_; }
  int size() const { return static_cast<int>(values_.size()); }
  bool empty() const { return values_.empty(); }
  int at(int pos) const;  // 1-based
  const std::vector<int>& values() const { return values_; }

  bool operator==(const PartialPermutation&) const = default;

  std::string str() const;

 private:
  std::vector<int> values_;
  int universe_ = 0;
};

// A bijection on [1, n]; n equals the length.
class Permutation {
 public:
  explicit Permutation(std::vector<int> values);
  static Permutation identity(int n);

  int size() const { return static_cast<int>(values_.size()); }
  int at(int pos) const;  // 1-based
  const std::vector<int>& values() const { return values_; }
  PartialPermutation as_partial() const { return {values_, size()}; }

  bool operator==(const Permutation&) const = default;

  std::string str() const;

 private:
  std::vector<int> values_;
};

// Descent indicator of a sequence: bit i is 1 iff seq[i] > seq[i+1]
// (1-based; length is one less than the sequence's).
struct InversionVector {
  std::vector<uint8_t> bits;
  bool operator==(const InversionVector&) const = default;
};

std::vector<uint8_t> inversion_bits(std::span<const int> seq);
InversionVector inversion_vector(const PartialPermutation& p);
InversionVector inversion_vector(const Permutation& p);

// Weighted sum of set bit positions, reduced mod `modulus`; modulus must be
// positive.  For a length-L sequence the conventional modulus is L itself.
int vt_syndrome(std::span<const uint8_t> bits, int modulus);
int vt_syndrome(const InversionVector& v, int modulus);

// Syndrome of a raw sequence under the length-L modulus convention.
int sequence_vt_syndrome(std::span<const int> seq);

// Sum of symbols; 0 for the empty sequence.
long long checksum(std::span<const int> seq);

// Subsequence of sigma at the given ascending 1-based positions.
PartialPermutation project(const Permutation& sigma, std::span<const int> keep);

// Ascending list of the universe symbols absent from p.
std::vector<int> missing_symbols(const PartialPermutation& p);

// Insert `symbol` into `seq` at the unique position whose resulting descent
// syndrome (mod len+1) equals `target`.  Throws DecodeError when no position
// works and reports loudly when more than one does (which would contradict
// the single-deletion decodability of the syndrome classes).
std::vector<int> reinsert_by_vt(std::span<const int> seq, int symbol, int target);
PartialPermutation reinsert_by_vt(const PartialPermutation& p, int symbol, int target);

// Stride-d split: subsequence k takes positions k, k+d, k+2d, ...
std::vector<std::vector<int>> deinterleave(std::span<const int> seq, int d);
// Round-robin inverse of deinterleave.
std::vector<int> interleave(const std::vector<std::vector<int>>& parts);

std::string seq_str(std::span<const int> seq);

}  // namespace ranksync

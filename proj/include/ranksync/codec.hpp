#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ranksync {

// Ranks of subsets and orderings overflow 64 bits well before n = 1024,
// d = 16 (C(1024,16) needs 116 bits), so the codec works in 128 bits.
using u128 = unsigned __int128;

std::string u128_str(u128 v);

// Fixed-width big-endian bit strings; the only payload type on the channel.
class BitString {
 public:
  void append_bit(int bit);
  void append_uint(u128 value, int width);  // big-endian, value < 2^width
  u128 read_uint(int offset, int width) const;

  int size() const { return static_cast<int>(bits_.size()); }
  const std::vector<uint8_t>& bits() const { return bits_; }

  // MSB-first nibbles, lowercase, last nibble zero-padded; "" when empty.
  std::string hex() const;

  bool operator==(const BitString&) const = default;

  static BitString of_uint(u128 value, int width);

 private:
  std::vector<uint8_t> bits_;
};

// Convenience aliases for fixed-width fields.
BitString uint_encode(u128 value, int width);
u128 uint_decode(const BitString& b);

// Exact binomial coefficient; throws std::overflow_error past 127 bits.
u128 binomial(int n, int k);
u128 factorial(int d);

// Smallest w with count <= 2^w (count >= 1); the fixed field width for a
// value ranging over `count` alternatives.
int bit_width(u128 count);

double log2_u128(u128 v);
double log2_binomial(int n, int k);
double log2_factorial(int d);

// Colexicographic rank of an ascending d-subset of [1, n] within [0, C(n,d)):
// rank = sum_i C(s_i - 1, i).
u128 subset_rank(std::span<const int> subset, int n);
std::vector<int> subset_unrank(u128 rank, int n, int d);

// Factorial-base (Lehmer) rank of `seq` among the d! orderings of its
// elements; `sorted_ref` is the ascending reference ordering.
u128 ordering_rank(std::span<const int> seq, std::span<const int> sorted_ref);
std::vector<int> ordering_unrank(u128 rank, std::span<const int> sorted_ref);

}  // namespace ranksync

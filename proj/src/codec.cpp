#include "ranksync/codec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ranksync {

std::string u128_str(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

void BitString::append_bit(int bit) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("bit must be 0 or 1");
  bits_.push_back(static_cast<uint8_t>(bit));
}

void BitString::append_uint(u128 value, int width) {
  if (width < 0 || width > 127) throw std::invalid_argument("field width outside [0, 127]");
  if (width < 127 && value >> width)
    throw std::invalid_argument("value does not fit in " + std::to_string(width) + " bits");
  for (int i = width - 1; i >= 0; --i)
    bits_.push_back(static_cast<uint8_t>((value >> i) & 1));
}

u128 BitString::read_uint(int offset, int width) const {
  if (offset < 0 || width < 0 || offset + width > size())
    throw std::out_of_range("bit field outside the string");
  u128 v = 0;
  for (int i = 0; i < width; ++i) v = (v << 1) | bits_[offset + i];
  return v;
}

std::string BitString::hex() const {
  static const char digits[] = "0123456789abcdef";
  std::string s;
  for (size_t i = 0; i < bits_.size(); i += 4) {
    int nibble = 0;
    for (size_t j = 0; j < 4; ++j) {
      nibble <<= 1;
      if (i + j < bits_.size()) nibble |= bits_[i + j];
    }
    s.push_back(digits[nibble]);
  }
  return s;
}

BitString BitString::of_uint(u128 value, int width) {
  BitString b;
  b.append_uint(value, width);
  return b;
}

BitString uint_encode(u128 value, int width) { return BitString::of_uint(value, width); }

u128 uint_decode(const BitString& b) { return b.read_uint(0, b.size()); }

u128 binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  u128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    const u128 num = static_cast<u128>(n - k + i);
    // acc * num / i is exact at every step (it is C(n-k+i, i)); guard the
    // product against 128-bit overflow before dividing.
    if (acc > static_cast<u128>(-1) / num)
      throw std::overflow_error("binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                                ") exceeds 128 bits mid-product");
    acc = acc * num / static_cast<u128>(i);
  }
  if (acc >> 127) throw std::overflow_error("binomial exceeds 127 bits");
  return acc;
}

u128 factorial(int d) {
  if (d < 0) throw std::invalid_argument("negative factorial");
  u128 acc = 1;
  for (int i = 2; i <= d; ++i) {
    if (acc > static_cast<u128>(-1) / static_cast<u128>(i))
      throw std::overflow_error("factorial(" + std::to_string(d) + ") exceeds 128 bits");
    acc *= static_cast<u128>(i);
  }
  if (acc >> 127) throw std::overflow_error("factorial exceeds 127 bits");
  return acc;
}

int bit_width(u128 count) {
  if (count == 0) throw std::invalid_argument("bit_width of zero alternatives");
  int w = 0;
  u128 reach = 1;
  while (reach < count) {
    reach <<= 1;
    ++w;
    if (w > 127) throw std::overflow_error("width beyond 127 bits");
  }
  return w;
}

double log2_u128(u128 v) {
  if (v == 0) throw std::invalid_argument("log2 of zero");
  const uint64_t hi = static_cast<uint64_t>(v >> 64);
  if (hi == 0) return std::log2(static_cast<double>(static_cast<uint64_t>(v)));
  return 64.0 + std::log2(static_cast<double>(hi) +
                          static_cast<double>(static_cast<uint64_t>(v)) * 0x1.0p-64);
}

double log2_binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) throw std::invalid_argument("log2_binomial outside Pascal triangle");
  k = std::min(k, n - k);
  double acc = 0.0;
  for (int i = 1; i <= k; ++i)
    acc += std::log2(static_cast<double>(n - k + i)) - std::log2(static_cast<double>(i));
  return acc;
}

double log2_factorial(int d) {
  if (d < 0) throw std::invalid_argument("negative factorial");
  double acc = 0.0;
  for (int i = 2; i <= d; ++i) acc += std::log2(static_cast<double>(i));
  return acc;
}

u128 subset_rank(std::span<const int> subset, int n) {
  int prev = 0;
  u128 rank = 0;
  for (size_t i = 0; i < subset.size(); ++i) {
    const int s = subset[i];
    if (s < 1 || s > n) throw std::out_of_range("subset element outside [1, n]");
    if (s <= prev) throw std::invalid_argument("subset must be strictly ascending");
    prev = s;
    rank += binomial(s - 1, static_cast<int>(i) + 1);
  }
  return rank;
}

std::vector<int> subset_unrank(u128 rank, int n, int d) {
  if (d < 0 || d > n) throw std::invalid_argument("subset size outside [0, n]");
  if (rank >= binomial(n, d)) throw std::out_of_range("subset rank out of range");
  std::vector<int> out(d);
  // Peel off the largest element first: it is the greatest s with
  // C(s-1, d) <= remaining rank.
  for (int i = d; i >= 1; --i) {
    int s = i;  // smallest candidate: the i-th element is at least i
    while (binomial(s, i) <= rank) ++s;
    out[i - 1] = s;
    rank -= binomial(s - 1, i);
  }
  return out;
}

u128 ordering_rank(std::span<const int> seq, std::span<const int> sorted_ref) {
  if (seq.size() != sorted_ref.size())
    throw std::invalid_argument("ordering and reference differ in length");
  std::vector<int> remaining(sorted_ref.begin(), sorted_ref.end());
  if (!std::is_sorted(remaining.begin(), remaining.end()))
    throw std::invalid_argument("reference must be ascending");
  u128 rank = 0;
  for (size_t i = 0; i < seq.size(); ++i) {
    const auto it = std::find(remaining.begin(), remaining.end(), seq[i]);
    if (it == remaining.end())
      throw std::invalid_argument("ordering holds a symbol absent from the reference");
    const auto idx = static_cast<u128>(it - remaining.begin());
    rank = rank * static_cast<u128>(remaining.size()) + idx;
    remaining.erase(it);
  }
  return rank;
}

std::vector<int> ordering_unrank(u128 rank, std::span<const int> sorted_ref) {
  std::vector<int> remaining(sorted_ref.begin(), sorted_ref.end());
  if (!std::is_sorted(remaining.begin(), remaining.end()))
    throw std::invalid_argument("reference must be ascending");
  const int m = static_cast<int>(remaining.size());
  if (rank >= factorial(m)) throw std::out_of_range("ordering rank out of range");
  std::vector<int> out;
  out.reserve(m);
  u128 divisor = factorial(m);
  for (int i = 0; i < m; ++i) {
    divisor /= static_cast<u128>(m - i);  // (m-1-i)! after the division
    const int idx = static_cast<int>(rank / divisor);
    rank %= divisor;
    out.push_back(remaining[idx]);
    remaining.erase(remaining.begin() + idx);
  }
  return out;
}

}  // namespace ranksync

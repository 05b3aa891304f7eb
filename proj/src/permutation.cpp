#include "ranksync/permutation.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "ranksync/error.hpp"

namespace ranksync {

namespace {

void check_distinct_in_universe(const std::vector<int>& values, int universe) {
  std::vector<uint8_t> seen(static_cast<size_t>(universe) + 1, 0);
  for (int v : values) {
    if (v < 1 || v > universe)
      throw std::invalid_argument("symbol " + std::to_string(v) + " outside universe [1, " +
                                  std::to_string(universe) + "]");
    if (seen[v]) throw std::invalid_argument("duplicate symbol " + std::to_string(v));
    seen[v] = 1;
  }
}

}  // namespace

PartialPermutation::PartialPermutation(std::vector<int> values, int universe)
    : values_(std::move(values)), universe_(universe) {
  if (universe < 0) throw std::invalid_argument("negative universe");
  if (static_cast<int>(values_.size()) > universe)
    throw std::invalid_argument("more symbols than the universe holds");
  check_distinct_in_universe(values_, universe_);
}

int PartialPermutation::at(int pos) const {
  if (pos < 1 || pos > size()) throw std::out_of_range("position " + std::to_string(pos));
  return values_[pos - 1];
}

std::string PartialPermutation::str() const { return seq_str(values_); }

Permutation::Permutation(std::vector<int> values) : values_(std::move(values)) {
  check_distinct_in_universe(values_, static_cast<int>(values_.size()));
}

Permutation Permutation::identity(int n) {
  if (n < 0) throw std::invalid_argument("negative length");
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i + 1;
  return Permutation(std::move(v));
}

int Permutation::at(int pos) const {
  if (pos < 1 || pos > size()) throw std::out_of_range("position " + std::to_string(pos));
  return values_[pos - 1];
}

std::string Permutation::str() const { return seq_str(values_); }

std::vector<uint8_t> inversion_bits(std::span<const int> seq) {
  if (seq.empty()) throw std::invalid_argument("inversion vector of an empty sequence");
  std::vector<uint8_t> bits(seq.size() - 1);
  for (size_t i = 0; i + 1 < seq.size(); ++i) bits[i] = seq[i] > seq[i + 1] ? 1 : 0;
  return bits;
}

InversionVector inversion_vector(const PartialPermutation& p) {
  return InversionVector{inversion_bits(p.values())};
}

InversionVector inversion_vector(const Permutation& p) {
  return InversionVector{inversion_bits(p.values())};
}

int vt_syndrome(std::span<const uint8_t> bits, int modulus) {
  if (modulus <= 0) throw std::invalid_argument("syndrome modulus must be positive");
  long long acc = 0;
  for (size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) acc += static_cast<long long>(i) + 1;
  return static_cast<int>(acc % modulus);
}

int vt_syndrome(const InversionVector& v, int modulus) { return vt_syndrome(v.bits, modulus); }

int sequence_vt_syndrome(std::span<const int> seq) {
  return vt_syndrome(inversion_bits(seq), static_cast<int>(seq.size()));
}

long long checksum(std::span<const int> seq) {
  long long acc = 0;
  for (int v : seq) acc += v;
  return acc;
}

PartialPermutation project(const Permutation& sigma, std::span<const int> keep) {
  std::vector<int> values;
  values.reserve(keep.size());
  int prev = 0;
  for (int pos : keep) {
    if (pos < 1 || pos > sigma.size())
      throw std::out_of_range("projection position " + std::to_string(pos));
    if (pos <= prev) throw std::invalid_argument("projection positions must ascend");
    prev = pos;
    values.push_back(sigma.at(pos));
  }
  return {std::move(values), sigma.size()};
}

std::vector<int> missing_symbols(const PartialPermutation& p) {
  std::vector<uint8_t> seen(static_cast<size_t>(p.universe()) + 1, 0);
  for (int v : p.values()) seen[v] = 1;
  std::vector<int> out;
  out.reserve(p.universe() - p.size());
  for (int v = 1; v <= p.universe(); ++v)
    if (!seen[v]) out.push_back(v);
  return out;
}

std::vector<int> reinsert_by_vt(std::span<const int> seq, int symbol, int target) {
  const int m = static_cast<int>(seq.size());
  const int len = m + 1;  // modulus of the post-insertion syndrome
  if (target < 0 || target >= len)
    throw std::invalid_argument("target syndrome " + std::to_string(target) +
                                " outside [0, " + std::to_string(len - 1) + "]");
  for (int v : seq)
    if (v == symbol)
      throw std::invalid_argument("symbol " + std::to_string(symbol) + " already present");

  // Descent bits of seq with weighted/unweighted prefix sums, so the syndrome
  // of each candidate insertion falls out in O(1).
  std::vector<long long> wsum(m, 0), csum(m, 0);  // index k: bits 1..k of seq
  for (int j = 1; j <= m - 1; ++j) {
    const int bit = seq[j - 1] > seq[j] ? 1 : 0;
    wsum[j] = wsum[j - 1] + static_cast<long long>(bit) * j;
    csum[j] = csum[j - 1] + bit;
  }
  const long long wall = m > 0 ? wsum[m - 1] : 0;
  const long long call = m > 0 ? csum[m - 1] : 0;

  int found_pos = -1;
  for (int pos = 1; pos <= len; ++pos) {
    // Result bits: seq bits below pos-1 unchanged, two boundary comparisons
    // against `symbol`, seq bits from pos on shifted one slot up.
    long long s = pos >= 2 ? wsum[pos - 2] : 0;
    if (pos >= 2 && seq[pos - 2] > symbol) s += pos - 1;
    if (pos <= m && symbol > seq[pos - 1]) s += pos;
    const long long tail_idx = pos - 1;  // bits tail_idx+1..m-1 of seq shift up
    if (tail_idx <= m - 1) {
      s += (wall - wsum[tail_idx]) + (call - csum[tail_idx]);
    }
    if (s % len == target) {
      if (found_pos != -1)
        throw DecodeError("insertion of " + std::to_string(symbol) + " into " +
                          seq_str(seq) + ": positions " + std::to_string(found_pos) + " and " +
                          std::to_string(pos) + " both reach syndrome " + std::to_string(target) +
                          "; single-deletion decodability is violated");
      found_pos = pos;
    }
  }
  if (found_pos == -1)
    throw DecodeError("insertion of " + std::to_string(symbol) + " into " + seq_str(seq) +
                      ": no position reaches syndrome " + std::to_string(target));

  std::vector<int> out;
  out.reserve(len);
  out.insert(out.end(), seq.begin(), seq.begin() + (found_pos - 1));
  out.push_back(symbol);
  out.insert(out.end(), seq.begin() + (found_pos - 1), seq.end());
  return out;
}

PartialPermutation reinsert_by_vt(const PartialPermutation& p, int symbol, int target) {
  if (symbol < 1 || symbol > p.universe())
    throw std::invalid_argument("symbol " + std::to_string(symbol) + " outside universe");
  return {reinsert_by_vt(std::span<const int>(p.values()), symbol, target), p.universe()};
}

std::vector<std::vector<int>> deinterleave(std::span<const int> seq, int d) {
  if (d < 1) throw std::invalid_argument("stride must be at least 1");
  std::vector<std::vector<int>> parts(d);
  for (size_t i = 0; i < seq.size(); ++i) parts[i % d].push_back(seq[i]);
  return parts;
}

std::vector<int> interleave(const std::vector<std::vector<int>>& parts) {
  std::vector<int> out;
  size_t total = 0;
  for (const auto& p : parts) total += p.size();
  out.reserve(total);
  for (size_t i = 0; out.size() < total; ++i)
    for (const auto& p : parts)
      if (i < p.size()) out.push_back(p[i]);
  return out;
}

std::string seq_str(std::span<const int> seq) {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < seq.size(); ++i) {
    if (i) os << ',';
    os << seq[i];
  }
  os << ')';
  return os.str();
}

}  // namespace ranksync

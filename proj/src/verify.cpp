// Small-n verification suites: exhaustive (or densely sampled) checks of the
// structural properties the protocols lean on, with independent brute-force
// oracles wherever a closed form is being trusted.

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ranksync/harness.hpp"

namespace ranksync {
namespace {

constexpr int kExhaustiveCap = 6;   // below this, iterate all of S_n
constexpr int kSampledSigmas = 500; // above it, fixed-seed samples

// Applies fn to every permutation of {1..n} when n is small enough, otherwise
// to kSampledSigmas fixed-seed draws.
template <typename F>
void for_each_sigma(int n, F&& fn) {
  if (n <= kExhaustiveCap) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    do {
      fn(Permutation(v));
    } while (std::next_permutation(v.begin(), v.end()));
  } else {
    Rng rng(0x5eed0000ull + static_cast<uint64_t>(n));
    for (int i = 0; i < kSampledSigmas; ++i) fn(Permutation(rng.permutation(n)));
  }
}

struct Tally {
  long long sessions = 0;
  std::string failure;
};

void emit(std::vector<SuiteCheck>& out, const char* prop, const Tally& t) {
  SuiteCheck c;
  c.property = prop;
  c.pass = t.failure.empty();
  c.detail = c.pass ? std::to_string(t.sessions) + " sessions exact" : t.failure;
  out.push_back(std::move(c));
}

// Runs one session and records the first failure (wrong output or a throw).
template <typename DescFn, typename Thunk>
void attempt(Tally& t, const char* proto, const Permutation& x, DescFn&& desc, Thunk&& thunk) {
  ++t.sessions;
  std::string bad;
  try {
    const SyncOutcome o = thunk();
    if (!o.success) bad = "restored mismatch";
  } catch (const std::exception& ex) {
    bad = ex.what();
  }
  if (!bad.empty() && t.failure.empty()) {
    t.failure = std::string(proto) + " x=" + x.str() + " " + desc() + ": " + bad;
  }
}

// Every protocol, every permutation, every valid corruption of it.
void check_exactness(std::vector<SuiteCheck>& out, int n_max) {
  Tally p1, p2, ins, blk, mv, swp;
  const int hi = std::min(n_max, 8);

  for (int n = 1; n <= hi; ++n) {
    // Deletion patterns: every nonempty subset of positions.
    std::vector<std::vector<int>> subsets;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> pos;
      for (int i = 0; i < n; ++i) {
        if (mask & (1u << i)) pos.push_back(i + 1);
      }
      subsets.push_back(std::move(pos));
    }

    for_each_sigma(n, [&](const Permutation& x) {
      for (const auto& pos : subsets) {
        const int d = static_cast<int>(pos.size());
        const ErrorPattern e = Deletions{pos};
        const PartialPermutation y = apply_error(x, e);
        auto desc = [&] { return describe(e); };
        attempt(p1, "deletions_interactive", x, desc,
                [&] { return sync_deletions_interactive(x, y, d); });
        attempt(p2, "deletions_limited_feedback", x, desc,
                [&] { return sync_deletions_limited_feedback(x, y, d); });
        attempt(ins, "insertions_oneway", x, desc,
                [&] { return sync_insertions_oneway(y, x, d); });
      }
      for (int span = 1; span <= n; ++span) {
        for (int start = 1; start + span - 1 <= n; ++start) {
          const ErrorPattern e = BlockDeletion{start, span};
          const PartialPermutation y = apply_error(x, e);
          attempt(blk, "block_deletion", x, [&] { return describe(e); },
                  [&] { return sync_block_deletion(x, y, span); });
        }
      }
      for (int from = 1; from <= n; ++from) {
        for (int to = 1; to <= n; ++to) {
          if (from == to) continue;
          const Permutation y = apply_translocation(x, from, to);
          attempt(mv, "translocation", x,
                  [&] { return "move " + std::to_string(from) + "->" + std::to_string(to); },
                  [&] { return sync_translocation(x, y); });
        }
      }
      for (int a = 1; a <= n; ++a) {
        for (int b = a + 1; b <= n; ++b) {
          const Permutation y = apply_transposition(x, a, b);
          attempt(swp, "transposition_oneway", x,
                  [&] { return "swap " + std::to_string(a) + "," + std::to_string(b); },
                  [&] { return sync_transposition_oneway(x, y); });
        }
      }
    });
  }

  emit(out, "deletions_interactive_exact", p1);
  emit(out, "deletions_limited_feedback_exact", p2);
  emit(out, "insertions_oneway_exact", ins);
  emit(out, "block_deletion_exact", blk);
  emit(out, "translocation_exact", mv);
  emit(out, "transposition_oneway_exact", swp);
}

// The n syndrome values split S_n into n classes of (n-1)! sequences each.
void check_cosets(std::vector<SuiteCheck>& out, int n_max) {
  SuiteCheck c{"syndrome_classes_partition_evenly", true, ""};
  const int hi = std::min(n_max, 8);
  long long total = 0;
  for (int n = 2; n <= hi && c.pass; ++n) {
    std::vector<long long> count(n, 0);
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    do {
      ++count[sequence_vt_syndrome(v)];
      ++total;
    } while (std::next_permutation(v.begin(), v.end()));
    const long long expect = static_cast<long long>(factorial(n - 1));
    for (int s = 0; s < n; ++s) {
      if (count[s] != expect) {
        c.pass = false;
        c.detail = "n=" + std::to_string(n) + " syndrome " + std::to_string(s) + " has " +
                   std::to_string(count[s]) + " members, expected " + std::to_string(expect);
        break;
      }
    }
  }
  if (c.pass) c.detail = std::to_string(total) + " sequences classified";
  out.push_back(std::move(c));
}

// Moving any one symbol always changes the syndrome of the sequence it moved
// within; this is what lets a receiver decide which half of a window holds
// the displaced symbol by comparing one syndrome.
void check_detection(std::vector<SuiteCheck>& out, int n_max) {
  SuiteCheck c{"translocation_always_changes_syndrome", true, ""};
  const int hi = std::min(n_max, 7);
  long long moves = 0;
  for (int n = 2; n <= hi && c.pass; ++n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    do {
      const Permutation x(v);
      const int base = sequence_vt_syndrome(v);
      for (int from = 1; from <= n && c.pass; ++from) {
        for (int to = 1; to <= n; ++to) {
          if (from == to) continue;
          ++moves;
          const Permutation moved = apply_translocation(x, from, to);
          if (sequence_vt_syndrome(moved.values()) == base) {
            c.pass = false;
            c.detail = "x=" + x.str() + " move " + std::to_string(from) + "->" +
                       std::to_string(to) + " preserves the syndrome";
            break;
          }
        }
      }
    } while (std::next_permutation(v.begin(), v.end()) && c.pass);
  }
  if (c.pass) c.detail = std::to_string(moves) + " moves, none syndrome-preserving";
  out.push_back(std::move(c));
}

// Brute-force oracle for the reinsertion step: after one deletion, the n
// candidate reinsertions realize each syndrome value exactly once, and
// reinsert_by_vt picks the original sequence.
void check_unique_reinsertion(std::vector<SuiteCheck>& out, int n_max) {
  SuiteCheck c{"single_deletion_reinsertion_unique", true, ""};
  const int hi = std::min(n_max, 8);
  long long cases = 0;
  for (int n = 1; n <= hi; ++n) {
    for_each_sigma(n, [&](const Permutation& x) {
      if (!c.pass) return;
      const int target = sequence_vt_syndrome(x.values());
      for (int k = 1; k <= n && c.pass; ++k) {
        std::vector<int> s = x.values();
        const int b = s[k - 1];
        s.erase(s.begin() + (k - 1));
        std::set<int> seen;
        int hits = 0;
        for (int p = 1; p <= n; ++p) {
          std::vector<int> cand = s;
          cand.insert(cand.begin() + (p - 1), b);
          const int syn = sequence_vt_syndrome(cand);
          seen.insert(syn);
          if (syn == target) ++hits;
        }
        ++cases;
        const std::string where = " x=" + x.str() + " deleted position " + std::to_string(k);
        if (static_cast<int>(seen.size()) != n) {
          c.pass = false;
          c.detail = "candidate syndromes collide" + where;
        } else if (hits != 1) {
          c.pass = false;
          c.detail = std::to_string(hits) + " syndrome matches" + where;
        } else if (reinsert_by_vt(s, b, target) != x.values()) {
          c.pass = false;
          c.detail = "reinsert_by_vt disagrees with the oracle" + where;
        }
      }
    });
  }
  if (c.pass) c.detail = std::to_string(cases) + " deletions inverted";
  out.push_back(std::move(c));
}

// Deleting a symbol deletes exactly one bit (at one of the two touching
// indices) from the descent vector; the remaining bits are untouched.
void check_deletion_inversion(std::vector<SuiteCheck>& out, int n_max) {
  SuiteCheck c{"symbol_deletion_is_descent_bit_deletion", true, ""};
  const int hi = std::min(n_max, 8);
  long long cases = 0;
  for (int n = 2; n <= hi; ++n) {
    for_each_sigma(n, [&](const Permutation& x) {
      if (!c.pass) return;
      const std::vector<uint8_t> bits = inversion_bits(x.values());
      for (int k = 1; k <= n; ++k) {
        std::vector<int> s = x.values();
        s.erase(s.begin() + (k - 1));
        const std::vector<uint8_t> shortened = inversion_bits(s);
        bool ok = false;
        for (int j : {k - 1, k}) {
          if (j < 1 || j > static_cast<int>(bits.size())) continue;
          std::vector<uint8_t> cand = bits;
          cand.erase(cand.begin() + (j - 1));
          if (cand == shortened) {
            ok = true;
            break;
          }
        }
        ++cases;
        if (!ok) {
          c.pass = false;
          c.detail = "x=" + x.str() + " position " + std::to_string(k) +
                     ": no single-bit deletion explains the new descents";
          return;
        }
      }
    });
  }
  if (c.pass) c.detail = std::to_string(cases) + " deletions checked";
  out.push_back(std::move(c));
}

// Block deletion hits each stride class exactly once; the in-class indices
// form a plateau that steps down once, and the step position recovers the
// block start.
void check_block_shape(std::vector<SuiteCheck>& out, int n_max) {
  SuiteCheck c{"block_deletion_step_indices_single_switch", true, ""};
  const int hi = std::min(n_max, 8);
  long long cases = 0;
  for (int n = 1; n <= hi; ++n) {
    for_each_sigma(n, [&](const Permutation& x) {
      if (!c.pass) return;
      for (int span = 1; span <= n && c.pass; ++span) {
        for (int start = 1; start + span - 1 <= n && c.pass; ++start) {
          const PartialPermutation y = apply_error(x, BlockDeletion{start, span});
          const auto cx = deinterleave(x.values(), span);
          const auto cy = deinterleave(y.values(), span);
          const std::string where = " x=" + x.str() + " block [" + std::to_string(start) + "," +
                                    std::to_string(start + span - 1) + "]";
          std::vector<int> p(span, 0);
          for (int k = 0; k < span && c.pass; ++k) {
            if (cy[k].size() + 1 != cx[k].size()) {
              c.pass = false;
              c.detail = "class " + std::to_string(k + 1) + " not one short" + where;
              break;
            }
            int found = 0;
            for (size_t i = 0; i < cx[k].size(); ++i) {
              std::vector<int> cand = cx[k];
              cand.erase(cand.begin() + static_cast<long>(i));
              if (cand == cy[k]) {
                ++found;
                p[k] = static_cast<int>(i) + 1;
              }
            }
            if (found != 1) {
              c.pass = false;
              c.detail = std::to_string(found) + " candidate removals in class " +
                         std::to_string(k + 1) + where;
            }
          }
          if (!c.pass) break;
          const int pd = p[span - 1];
          int kstar = 0;
          for (int k = 1; k <= span; ++k) {
            if (p[k - 1] == pd) {
              kstar = k;
              break;
            }
          }
          bool shape = kstar >= 1 && (kstar == 1 || p[0] == pd + 1);
          for (int k = 1; k <= span && shape; ++k) {
            shape = p[k - 1] == (k < kstar ? pd + 1 : pd);
          }
          ++cases;
          if (!shape) {
            c.pass = false;
            c.detail = "step indices not a single switch" + where;
          } else if ((pd - 1) * span + kstar != start) {
            c.pass = false;
            c.detail = "switch position does not recover the block start" + where;
          }
        }
      }
    });
  }
  if (c.pass) c.detail = std::to_string(cases) + " blocks checked";
  out.push_back(std::move(c));
}

// Codec bijections: subset rank, ordering rank, fixed-width integers.
void check_roundtrip(std::vector<SuiteCheck>& out, int n_max) {
  (void)n_max;  // sizes fixed by cost, not by the caller

  SuiteCheck sub{"subset_rank_unrank_roundtrip", true, ""};
  long long subsets = 0;
  for (int n = 1; n <= 10 && sub.pass; ++n) {
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> s;
      for (int i = 0; i < n; ++i) {
        if (mask & (1u << i)) s.push_back(i + 1);
      }
      const int d = static_cast<int>(s.size());
      const u128 r = subset_rank(s, n);
      if (r >= binomial(n, d) || subset_unrank(r, n, d) != s) {
        sub.pass = false;
        sub.detail = "subset " + seq_str(s) + " of [" + std::to_string(n) + "]";
        break;
      }
      ++subsets;
    }
  }
  if (sub.pass) sub.detail = std::to_string(subsets) + " subsets round-tripped";
  out.push_back(std::move(sub));

  SuiteCheck ord{"ordering_rank_unrank_roundtrip", true, ""};
  const std::vector<int> ref{2, 3, 5, 7, 11};
  long long orderings = 0;
  for (int d = 1; d <= 5 && ord.pass; ++d) {
    const std::vector<int> sorted(ref.begin(), ref.begin() + d);
    std::vector<int> seq = sorted;
    std::set<unsigned long long> ranks;
    do {
      const u128 r = ordering_rank(seq, sorted);
      if (r >= factorial(d) || ordering_unrank(r, sorted) != seq) {
        ord.pass = false;
        ord.detail = "ordering " + seq_str(seq);
        break;
      }
      ranks.insert(static_cast<unsigned long long>(r));
      ++orderings;
    } while (std::next_permutation(seq.begin(), seq.end()));
    if (ord.pass && ranks.size() != static_cast<size_t>(factorial(d))) {
      ord.pass = false;
      ord.detail = "rank collisions at d=" + std::to_string(d);
    }
  }
  if (ord.pass) ord.detail = std::to_string(orderings) + " orderings round-tripped";
  out.push_back(std::move(ord));

  SuiteCheck bs{"bitstring_uint_roundtrip", true, ""};
  Rng rng(12345);
  for (int i = 0; i < 300 && bs.pass; ++i) {
    const int width = static_cast<int>(rng.uniform_u64(128));
    u128 value = (static_cast<u128>(rng.next()) << 64) | rng.next();
    value = width == 0 ? 0 : value & ((u128{1} << width) - 1);
    const BitString b = uint_encode(value, width);
    if (b.size() != width || uint_decode(b) != value ||
        static_cast<int>(b.hex().size()) != (width + 3) / 4) {
      bs.pass = false;
      bs.detail = "width " + std::to_string(width) + " value " + u128_str(value);
    }
  }
  if (bs.pass) bs.detail = "300 widths round-tripped";
  out.push_back(std::move(bs));
}

}  // namespace

std::vector<SuiteCheck> verify_small_n(const std::string& suite, int n_max) {
  if (n_max < 1) throw std::invalid_argument("verify_small_n: n_max must be positive");
  std::vector<SuiteCheck> out;
  bool known = false;
  const bool all = suite == "all";
  auto want = [&](const char* name) {
    if (all || suite == name) {
      known = true;
      return true;
    }
    return false;
  };
  if (want("exactness_all")) check_exactness(out, n_max);
  if (want("coset_partition")) check_cosets(out, n_max);
  if (want("translocation_detection")) check_detection(out, n_max);
  if (want("unique_reinsertion")) check_unique_reinsertion(out, n_max);
  if (want("deletion_inversion")) check_deletion_inversion(out, n_max);
  if (want("block_shape")) check_block_shape(out, n_max);
  if (want("roundtrip")) check_roundtrip(out, n_max);
  if (!known) throw std::invalid_argument("verify_small_n: unknown suite '" + suite + "'");
  return out;
}

bool all_passed(const std::vector<SuiteCheck>& checks) {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

}  // namespace ranksync

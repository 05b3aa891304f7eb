#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "ranksync/error.hpp"
#include "ranksync/errors.hpp"
#include "ranksync/permutation.hpp"
#include "ranksync/rng.hpp"

using namespace ranksync;

TEST_CASE("inversion bits mark descents") {
  const std::vector<int> seq{3, 1, 5, 7, 2, 6, 4};
  CHECK(inversion_bits(seq) == std::vector<uint8_t>{1, 0, 0, 1, 0, 1});
  CHECK(inversion_bits(std::vector<int>{5}).empty());
  CHECK_THROWS_AS(inversion_bits(std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("syndrome and checksum of a known sequence") {
  const std::vector<int> seq{3, 1, 5, 7, 2, 6, 4};
  // descents at 1, 4, 6 -> (1+4+6) mod 7
  CHECK(sequence_vt_syndrome(seq) == 4);
  CHECK(checksum(seq) == 28);
  CHECK(checksum(std::vector<int>{}) == 0);
}

TEST_CASE("syndrome respects its modulus argument") {
  const std::vector<uint8_t> bits{1, 0, 0, 1, 0, 1};
  CHECK(vt_syndrome(bits, 7) == 4);
  CHECK(vt_syndrome(bits, 11) == 0);
  CHECK(vt_syndrome(bits, 2) == 1);
  CHECK_THROWS_AS(vt_syndrome(bits, 0), std::invalid_argument);
}

TEST_CASE("permutation validation") {
  CHECK_THROWS_AS(Permutation({1, 2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation({1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(PartialPermutation({0, 1}, 4), std::invalid_argument);
  CHECK_THROWS_AS(PartialPermutation({5}, 4), std::invalid_argument);
  CHECK(Permutation::identity(4).values() == std::vector<int>{1, 2, 3, 4});
  CHECK(Permutation({2, 1}).at(2) == 1);
}

TEST_CASE("project and missing symbols") {
  const Permutation sigma({4, 1, 3, 5, 2});
  const std::vector<int> keep{2, 4, 5};
  const PartialPermutation p = project(sigma, keep);
  CHECK(p.values() == std::vector<int>{1, 5, 2});
  CHECK(missing_symbols(p) == std::vector<int>{3, 4});
  CHECK(missing_symbols(sigma.as_partial()).empty());
}

TEST_CASE("reinsertion matches the brute-force scan") {
  Rng rng(99);
  for (int n = 2; n <= 40; ++n) {
    const Permutation sigma(rng.permutation(n));
    const int target = sequence_vt_syndrome(sigma.values());
    for (int k = 1; k <= n; ++k) {
      std::vector<int> s = sigma.values();
      const int symbol = s[k - 1];
      s.erase(s.begin() + (k - 1));
      CHECK(reinsert_by_vt(s, symbol, target) == sigma.values());
    }
  }
}

TEST_CASE("reinsertion into the empty sequence") {
  CHECK(reinsert_by_vt(std::vector<int>{}, 7, 0) == std::vector<int>{7});
}

TEST_CASE("reinsertion rejects an out-of-range target") {
  // Valid targets for a length-3 result live in [0, 2].  In-range targets are
  // always reachable (one slot per class), so range is the only bad input.
  CHECK_THROWS_AS(reinsert_by_vt(std::vector<int>{1, 2}, 5, 3), std::invalid_argument);
  CHECK_THROWS_AS(reinsert_by_vt(std::vector<int>{1, 2}, 2, 1), std::invalid_argument);
}

TEST_CASE("deinterleave and interleave are inverse") {
  const std::vector<int> seq{1, 5, 2, 8, 3, 4, 9, 6, 10, 7};
  const auto parts = deinterleave(seq, 3);
  REQUIRE(parts.size() == 3);
  CHECK(parts[0] == std::vector<int>{1, 8, 9, 7});
  CHECK(parts[1] == std::vector<int>{5, 3, 6});
  CHECK(parts[2] == std::vector<int>{2, 4, 10});
  CHECK(interleave(parts) == seq);

  Rng rng(3);
  for (int n = 1; n <= 30; ++n) {
    const std::vector<int> v = rng.permutation(n);
    for (int d = 1; d <= n; ++d) CHECK(interleave(deinterleave(v, d)) == v);
  }
}

TEST_CASE("error application") {
  const Permutation sigma({1, 2, 3, 4, 5, 6, 7});
  SUBCASE("deletions") {
    const std::vector<int> pos{2, 5};
    CHECK(delete_positions(sigma.values(), pos) == std::vector<int>{1, 3, 4, 6, 7});
    CHECK(apply_error(sigma, Deletions{pos}).values() == std::vector<int>{1, 3, 4, 6, 7});
  }
  SUBCASE("block") {
    CHECK(apply_error(sigma, BlockDeletion{3, 2}).values() == std::vector<int>{1, 2, 5, 6, 7});
  }
  SUBCASE("translocation moves one symbol") {
    CHECK(apply_translocation(sigma, 2, 6).values() == std::vector<int>{1, 3, 4, 5, 6, 2, 7});
    CHECK(apply_translocation(sigma, 6, 2).values() == std::vector<int>{1, 6, 2, 3, 4, 5, 7});
    // adjacent moves in either direction swap neighbours
    CHECK(apply_translocation(sigma, 3, 4).values() ==
          apply_translocation(sigma, 4, 3).values());
  }
  SUBCASE("transposition swaps two symbols") {
    CHECK(apply_transposition(sigma, 2, 6).values() == std::vector<int>{1, 6, 3, 4, 5, 2, 7});
  }
}

TEST_CASE("sampled errors are valid and uniform enough") {
  Rng rng(77);
  const int n = 6;
  const int trials = 30000;

  SUBCASE("translocations cover all collapsed outcomes uniformly") {
    // (n-1)^2 distinct rearrangements; chi-square against uniform.
    std::map<std::pair<int, int>, int> hits;
    for (int t = 0; t < trials; ++t) {
      const auto e = std::get<Translocation>(sample_error(ErrorModel::Translocations, n, 1, rng));
      CHECK(e.from != e.to);
      CHECK(e.from != e.to + 1);  // collapsed duplicate never drawn
      ++hits[{e.from, e.to}];
    }
    const int cells = (n - 1) * (n - 1);
    CHECK(static_cast<int>(hits.size()) == cells);
    const double expect = static_cast<double>(trials) / cells;
    double chi2 = 0.0;
    for (const auto& [key, count] : hits) {
      const double diff = count - expect;
      chi2 += diff * diff / expect;
    }
    CHECK(chi2 < 2.0 * cells);  // wildly loose; catches gross bias only
  }

  SUBCASE("transpositions cover all pairs uniformly") {
    std::map<std::pair<int, int>, int> hits;
    for (int t = 0; t < trials; ++t) {
      const auto e = std::get<Transposition>(sample_error(ErrorModel::Transpositions, n, 1, rng));
      CHECK(e.a < e.b);
      CHECK(e.a >= 1);
      CHECK(e.b <= n);
      ++hits[{e.a, e.b}];
    }
    const int cells = n * (n - 1) / 2;
    CHECK(static_cast<int>(hits.size()) == cells);
    const double expect = static_cast<double>(trials) / cells;
    double chi2 = 0.0;
    for (const auto& [key, count] : hits) {
      const double diff = count - expect;
      chi2 += diff * diff / expect;
    }
    CHECK(chi2 < 2.0 * cells);
  }

  SUBCASE("deletion sets are ascending and in range") {
    for (int t = 0; t < 2000; ++t) {
      const auto e = std::get<Deletions>(sample_error(ErrorModel::Deletions, n, 3, rng));
      REQUIRE(e.positions.size() == 3);
      CHECK(std::is_sorted(e.positions.begin(), e.positions.end()));
      CHECK(e.positions.front() >= 1);
      CHECK(e.positions.back() <= n);
      CHECK(std::adjacent_find(e.positions.begin(), e.positions.end()) == e.positions.end());
    }
  }

  SUBCASE("block starts stay in range") {
    for (int t = 0; t < 2000; ++t) {
      const auto e = std::get<BlockDeletion>(sample_error(ErrorModel::BlockDeletions, n, 2, rng));
      CHECK(e.span == 2);
      CHECK(e.start >= 1);
      CHECK(e.start <= n - 1);
    }
  }
}

TEST_CASE("per-trial streams are independent and reproducible") {
  Rng a = Rng::for_trial(42, 0);
  Rng b = Rng::for_trial(42, 0);
  Rng c = Rng::for_trial(42, 1);
  const uint64_t a0 = a.next();
  CHECK(a0 == b.next());
  CHECK(a0 != c.next());
  CHECK(Rng::for_trial(43, 0).next() != Rng::for_trial(42, 0).next());
}

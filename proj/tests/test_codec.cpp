#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "ranksync/codec.hpp"
#include "ranksync/rng.hpp"

using namespace ranksync;

TEST_CASE("binomial and factorial exact values") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(16, 2) == 120);
  CHECK(binomial(1024, 2) == 523776);
  CHECK(factorial(0) == 1);
  CHECK(factorial(5) == 120);
  CHECK(u128_str(factorial(16)) == "20922789888000");
  // C(1024,16) needs 116 bits; it must be exact, not saturated.
  CHECK(bit_width(binomial(1024, 16)) == 116);
  CHECK_THROWS_AS(binomial(300, 150), std::overflow_error);
}

TEST_CASE("bit_width is the smallest sufficient field width") {
  CHECK(bit_width(1) == 0);
  CHECK(bit_width(2) == 1);
  CHECK(bit_width(3) == 2);
  CHECK(bit_width(4) == 2);
  CHECK(bit_width(5) == 3);
  CHECK(bit_width(1024) == 10);
  CHECK(bit_width(1025) == 11);
}

TEST_CASE("log2 helpers agree with lgamma") {
  auto lg = [](double v) { return std::lgamma(v) / std::log(2.0); };
  for (const auto& [n, k] : {std::pair{10, 3}, {100, 7}, {1024, 16}, {1023, 2}}) {
    const double via_lgamma = lg(n + 1) - lg(k + 1) - lg(n - k + 1);
    CHECK(log2_binomial(n, k) == doctest::Approx(via_lgamma).epsilon(1e-12));
  }
  CHECK(log2_factorial(16) == doctest::Approx(lg(17)).epsilon(1e-12));
  CHECK(log2_u128(u128{1} << 100) == doctest::Approx(100.0));
}

TEST_CASE("subset colex rank frozen values") {
  CHECK(subset_rank(std::vector<int>{1, 2, 3}, 10) == 0);
  // colex: rank = C(1,1) + C(2,2) + C(3,3)
  CHECK(subset_rank(std::vector<int>{2, 3, 4}, 10) == 3);
  // the last subset in colex order
  CHECK(subset_rank(std::vector<int>{8, 9, 10}, 10) == binomial(10, 3) - 1);
  CHECK(subset_unrank(3, 10, 3) == std::vector<int>{2, 3, 4});
  CHECK_THROWS_AS(subset_rank(std::vector<int>{3, 2}, 10), std::invalid_argument);
}

TEST_CASE("ordering rank frozen values") {
  const std::vector<int> ref{1, 2, 3};
  CHECK(ordering_rank(std::vector<int>{1, 2, 3}, ref) == 0);
  CHECK(ordering_rank(std::vector<int>{3, 1, 2}, ref) == 4);
  CHECK(ordering_rank(std::vector<int>{3, 2, 1}, ref) == 5);
  CHECK(ordering_unrank(4, ref) == std::vector<int>{3, 1, 2});
}

TEST_CASE("large subset ranks round-trip") {
  Rng rng(5);
  const int n = 1024, d = 16;
  for (int t = 0; t < 200; ++t) {
    std::set<int> pick;
    while (static_cast<int>(pick.size()) < d)
      pick.insert(1 + static_cast<int>(rng.uniform_u64(n)));
    const std::vector<int> s(pick.begin(), pick.end());
    const u128 r = subset_rank(s, n);
    CHECK(r < binomial(n, d));
    CHECK(subset_unrank(r, n, d) == s);
  }
}

TEST_CASE("bitstring is big-endian and hex prints MSB first") {
  BitString b;
  b.append_uint(5, 3);  // 101
  CHECK(b.size() == 3);
  CHECK(b.bits() == std::vector<uint8_t>{1, 0, 1});
  CHECK(b.hex() == "a");  // padded to 1010
  CHECK(b.read_uint(0, 3) == 5);
  b.append_uint(3, 2);  // now 10111
  CHECK(b.read_uint(0, 5) == 23);
  CHECK(b.read_uint(3, 2) == 3);
  CHECK(BitString{}.hex().empty());
  CHECK_THROWS_AS(BitString{}.append_uint(4, 2), std::invalid_argument);
}

TEST_CASE("uint encode/decode round-trips across widths") {
  Rng rng(8);
  for (int t = 0; t < 500; ++t) {
    const int width = static_cast<int>(rng.uniform_u64(127)) + 1;
    u128 value = (static_cast<u128>(rng.next()) << 64) | rng.next();
    value &= (u128{1} << width) - 1;
    const BitString b = uint_encode(value, width);
    CHECK(b.size() == width);
    CHECK(uint_decode(b) == value);
  }
  CHECK(uint_encode(0, 0).size() == 0);
  CHECK(uint_decode(uint_encode(0, 0)) == 0);
}

TEST_CASE("u128 printing") {
  CHECK(u128_str(0) == "0");
  CHECK(u128_str(1234567890123456789ull) == "1234567890123456789");
  CHECK(u128_str(~u128{0}) == "340282366920938463463374607431768211455");
}

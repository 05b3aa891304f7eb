#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ranksync/channel.hpp"
#include "ranksync/error.hpp"

using namespace ranksync;

TEST_CASE("anchor message width and payload") {
  const Message m = msg_anchor(5, 7);
  CHECK(m.direction == Direction::TtoR);
  CHECK(m.wire_bits() == 3);
  CHECK(m.payload.read_uint(0, 3) == 4);  // symbol - 1
  CHECK(m.ideal_bits == doctest::Approx(std::log2(7.0)));
  CHECK_THROWS_AS(msg_anchor(8, 7), ContractViolation);
  CHECK_THROWS_AS(msg_anchor(0, 7), ContractViolation);
}

TEST_CASE("syndrome message costs zero bits for a singleton") {
  CHECK(msg_vt(0, 1).wire_bits() == 0);
  CHECK(msg_vt(0, 1).ideal_bits == 0.0);
  CHECK(msg_vt(2, 3).wire_bits() == 2);
  CHECK_THROWS_AS(msg_vt(3, 3), ContractViolation);
  CHECK_THROWS_AS(msg_vt(0, 0), ContractViolation);
}

TEST_CASE("checksum width covers the substring's value range") {
  // a 3-symbol substring of [1,7] sums to at most 21: field spans [0,21]
  const Message m = msg_checksum(18, 3, 7);
  CHECK(m.wire_bits() == 5);
  CHECK(m.payload.read_uint(0, 5) == 18);
  CHECK(m.ideal_bits == doctest::Approx(std::log2(18.0)));
  CHECK_THROWS_AS(msg_checksum(22, 3, 7), ContractViolation);
  // empty substring: only checksum 0 is encodable, in zero bits
  CHECK(msg_checksum(0, 0, 7).wire_bits() == 0);
}

TEST_CASE("moment message widths scale with the weight power") {
  const int n = 4;  // bit_width(5) = 3
  CHECK(msg_moment(30, 1, n).wire_bits() == 9);
  CHECK(msg_moment(100, 2, n).wire_bits() == 12);
  CHECK(msg_moment(354, 3, n).wire_bits() == 15);
  CHECK(msg_moment(30, 1, n).ideal_bits == doctest::Approx(3 * std::log2(5.0)));
  CHECK_THROWS_AS(msg_moment(1, 4, n), ContractViolation);
}

TEST_CASE("raw substring packs symbols back to back") {
  const std::vector<int> symbols{1, 2, 3};
  const Message m = msg_raw_substring(symbols, 127);
  CHECK(m.wire_bits() == 21);
  CHECK(m.payload.read_uint(0, 7) == 0);
  CHECK(m.payload.read_uint(14, 7) == 2);
  CHECK(m.ideal_bits == doctest::Approx(3 * std::log2(127.0)));
}

TEST_CASE("position message travels on the feedback link") {
  const Message m = msg_position(5, 10, true);
  CHECK(m.direction == Direction::RtoT);
  CHECK(m.wire_bits() == 4);
  CHECK(m.deviation);
  CHECK(m.payload.read_uint(0, 4) == 4);
}

TEST_CASE("subset and ordering messages use exact-rank widths") {
  CHECK(msg_subset(0, 1024, 2, Direction::RtoT).wire_bits() == 19);  // C = 523776
  CHECK(msg_subset(0, 1024, 16, Direction::RtoT).wire_bits() == 116);
  CHECK(msg_ordering(0, 4).wire_bits() == 5);  // 4! = 24
  CHECK_THROWS_AS(msg_subset(10, 5, 2, Direction::RtoT), ContractViolation);
  CHECK_THROWS_AS(msg_ordering(24, 4), ContractViolation);
}

TEST_CASE("feedback width is caller-pinned") {
  const Message m = msg_feedback(Direction::RtoT, 9, 4, 3.0);
  CHECK(m.wire_bits() == 4);
  CHECK(m.ideal_bits == 3.0);
  CHECK_THROWS_AS(msg_feedback(Direction::RtoT, 9, 3, 3.0), ContractViolation);
}

TEST_CASE("transcript totals split by direction and comparability") {
  Transcript t;
  t.send(msg_anchor(3, 8));                        // TtoR, 3 bits
  t.send(msg_feedback(Direction::RtoT, 1, 3, 3));  // RtoT
  t.send(msg_position(2, 8, true));                // RtoT, deviation
  t.send(msg_vt(1, 4));                            // TtoR

  CHECK(t.totals().forward.wire == 5);
  CHECK(t.totals().forward.wire_comparable == 5);
  CHECK(t.totals().feedback.wire == 6);
  CHECK(t.totals().feedback.wire_comparable == 3);
  CHECK(t.totals().feedback.ideal == doctest::Approx(6.0));
  CHECK(t.totals().feedback.ideal_comparable == doctest::Approx(3.0));
  CHECK(t.count_kind(MessageKind::Anchor) == 1);
  CHECK(t.count_kind(MessageKind::Feedback) == 1);
  CHECK(t.messages().size() == 4);
}

TEST_CASE("rounds count receiver-initiated alternations") {
  Transcript t;
  CHECK(t.totals().rounds == 0);
  t.send(msg_anchor(1, 4));
  CHECK(t.totals().rounds == 0);
  t.send(msg_feedback(Direction::RtoT, 0, 2, 1.0));
  CHECK(t.totals().rounds == 1);
  t.send(msg_feedback(Direction::RtoT, 1, 2, 1.0));  // same burst
  CHECK(t.totals().rounds == 1);
  t.send(msg_anchor(2, 4));
  t.send(msg_feedback(Direction::RtoT, 0, 2, 1.0));
  CHECK(t.totals().rounds == 2);

  Transcript opens;  // a session the receiver opens
  opens.send(msg_subset(0, 8, 2, Direction::RtoT));
  CHECK(opens.totals().rounds == 1);
}

TEST_CASE("inconsistent ideal accounting is rejected") {
  Message m = msg_anchor(1, 16);  // 4 wire bits
  m.ideal_bits = 5.5;
  Transcript t;
  CHECK_THROWS_AS(t.send(m), ContractViolation);
  m.ideal_bits = -0.1;
  CHECK_THROWS_AS(t.send(m), ContractViolation);
}

TEST_CASE("dump emits one parseable line per message") {
  Transcript t;
  t.send(msg_anchor(3, 8));
  t.send(msg_position(2, 8, true));
  std::ostringstream os;
  t.dump(os);
  CHECK(os.str() == "0;TtoR;anchor;3;3;0;4\n1;RtoT;position;3;3;1;2\n");
}

#pragma once

#include <iosfwd>
#include <vector>

#include "ranksync/codec.hpp"

namespace ranksync {

enum class Direction { TtoR, RtoT };

enum class MessageKind {
  Anchor,        // one reference symbol, identified within [1, n]
  VtSyndrome,    // descent syndrome of a substring, mod its length
  Checksum,      // symbol sum of a substring
  Feedback,      // small fixed-alphabet receiver verdicts
  Subset,        // colex rank of a d-subset of [1, n]
  Ordering,      // Lehmer rank of an ordering of d known symbols
  Moments,       // one weighted-moment aggregate of the whole permutation
  RawSubstring,  // verbatim symbols, used only for tiny base cases
  Position,      // one absolute position in [1, n]
};

const char* to_string(Direction d);
const char* to_string(MessageKind k);

// Everything a party emits crosses the channel as one of these; wire_bits is
// the exact serialized size while ideal_bits carries the real-valued cost used
// for comparisons against the closed-form references.  Messages whose cost has
// no counterpart in those references are flagged `deviation` so totals can be
// reported with and without them.
struct Message {
  Direction direction = Direction::TtoR;
  MessageKind kind = MessageKind::Anchor;
  BitString payload;
  double ideal_bits = 0.0;
  bool deviation = false;

  int wire_bits() const { return payload.size(); }
};

struct DirectionTotals {
  long long wire = 0;         // every message
  long long wire_comparable = 0;   // deviation-flagged messages excluded
  double ideal = 0.0;
  double ideal_comparable = 0.0;
};

struct TranscriptTotals {
  DirectionTotals forward;   // TtoR
  DirectionTotals feedback;  // RtoT
  int rounds = 0;            // direction alternations initiated by the receiver
};

class Transcript {
 public:
  void send(Message m);

  const std::vector<Message>& messages() const { return messages_; }
  const TranscriptTotals& totals() const { return totals_; }

  int count_kind(MessageKind k) const;

  // One line per message:
  // <index>;<direction>;<kind>;<wire_bits>;<ideal_bits>;<deviation>;<payload-as-hex>
  void dump(std::ostream& os) const;

 private:
  std::vector<Message> messages_;
  TranscriptTotals totals_;
};

// Message factories shared by the protocols; each pins the (wire, ideal) cost
// convention for its kind.  Widths depend only on values both parties already
// know, so fields stay decodable without extra framing.
Message msg_anchor(int symbol, int n);
Message msg_vt(int syndrome, int seq_len);
Message msg_checksum(long long value, int seq_len, int n);
Message msg_feedback(Direction dir, int code, int wire_width, double ideal_bits);
Message msg_subset(u128 rank, int n, int d, Direction dir);
Message msg_ordering(u128 rank, int d);
Message msg_moment(u128 value, int weight_power, int n);
Message msg_raw_substring(std::span<const int> symbols, int n);
Message msg_position(int pos, int n, bool deviation);

}  // namespace ranksync

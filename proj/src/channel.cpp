#include "ranksync/channel.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

#include "ranksync/error.hpp"

namespace ranksync {

const char* to_string(Direction d) { return d == Direction::TtoR ? "TtoR" : "RtoT"; }

const char* to_string(MessageKind k) {
  switch (k) {
    case MessageKind::Anchor: return "anchor";
    case MessageKind::VtSyndrome: return "vt_syndrome";
    case MessageKind::Checksum: return "checksum";
    case MessageKind::Feedback: return "feedback";
    case MessageKind::Subset: return "subset";
    case MessageKind::Ordering: return "ordering";
    case MessageKind::Moments: return "moments";
    case MessageKind::RawSubstring: return "raw_substring";
    case MessageKind::Position: return "position";
  }
  return "?";
}

void Transcript::send(Message m) {
  if (m.ideal_bits < 0.0 || m.ideal_bits > m.wire_bits() + 1.0)
    throw ContractViolation("ideal cost " + std::to_string(m.ideal_bits) +
                            " inconsistent with wire width " + std::to_string(m.wire_bits()));
  auto& dir = m.direction == Direction::TtoR ? totals_.forward : totals_.feedback;
  dir.wire += m.wire_bits();
  dir.ideal += m.ideal_bits;
  if (!m.deviation) {
    dir.wire_comparable += m.wire_bits();
    dir.ideal_comparable += m.ideal_bits;
  }
  if (m.direction == Direction::RtoT &&
      (messages_.empty() || messages_.back().direction == Direction::TtoR))
    ++totals_.rounds;
  messages_.push_back(std::move(m));
}

int Transcript::count_kind(MessageKind k) const {
  int c = 0;
  for (const auto& m : messages_)
    if (m.kind == k) ++c;
  return c;
}

void Transcript::dump(std::ostream& os) const {
  for (size_t i = 0; i < messages_.size(); ++i) {
    const Message& m = messages_[i];
    os << i << ';' << to_string(m.direction) << ';' << to_string(m.kind) << ';' << m.wire_bits()
       << ';' << std::setprecision(12) << m.ideal_bits << ';' << (m.deviation ? 1 : 0) << ';'
       << m.payload.hex() << '\n';
  }
}

namespace {

double log2d(double v) { return std::log2(v); }

}  // namespace

Message msg_anchor(int symbol, int n) {
  if (symbol < 1 || symbol > n) throw ContractViolation("anchor symbol outside [1, n]");
  Message m;
  m.direction = Direction::TtoR;
  m.kind = MessageKind::Anchor;
  m.payload = uint_encode(static_cast<u128>(symbol - 1), bit_width(static_cast<u128>(n)));
  m.ideal_bits = log2d(n);
  return m;
}

Message msg_vt(int syndrome, int seq_len) {
  if (seq_len < 1) throw ContractViolation("syndrome of an empty substring");
  if (syndrome < 0 || syndrome >= seq_len) throw ContractViolation("syndrome outside its modulus");
  Message m;
  m.direction = Direction::TtoR;
  m.kind = MessageKind::VtSyndrome;
  m.payload = uint_encode(static_cast<u128>(syndrome), bit_width(static_cast<u128>(seq_len)));
  m.ideal_bits = log2d(seq_len);
  return m;
}

Message msg_checksum(long long value, int seq_len, int n) {
  const long long cap = static_cast<long long>(seq_len) * n;
  if (value < 0 || value > cap) throw ContractViolation("checksum outside [0, len*n]");
  Message m;
  m.direction = Direction::TtoR;
  m.kind = MessageKind::Checksum;
  m.payload =
      uint_encode(static_cast<u128>(value), bit_width(static_cast<u128>(cap) + 1));
  // A checksum is the one field whose real information content tracks its
  // value, not its width: charge log2 of the value itself (floored at one bit).
  m.ideal_bits = log2d(static_cast<double>(std::max<long long>(value, 2)));
  return m;
}

Message msg_feedback(Direction dir, int code, int wire_width, double ideal_bits) {
  if (code < 0 || (wire_width < 127 && (static_cast<u128>(code) >> wire_width) != 0))
    throw ContractViolation("feedback code does not fit its width");
  Message m;
  m.direction = dir;
  m.kind = MessageKind::Feedback;
  m.payload = uint_encode(static_cast<u128>(code), wire_width);
  m.ideal_bits = ideal_bits;
  return m;
}

Message msg_subset(u128 rank, int n, int d, Direction dir) {
  const u128 total = binomial(n, d);
  if (rank >= total) throw ContractViolation("subset rank out of range");
  Message m;
  m.direction = dir;
  m.kind = MessageKind::Subset;
  m.payload = uint_encode(rank, bit_width(total));
  m.ideal_bits = log2_binomial(n, d);
  return m;
}

Message msg_ordering(u128 rank, int d) {
  const u128 total = factorial(d);
  if (rank >= total) throw ContractViolation("ordering rank out of range");
  Message m;
  m.direction = Direction::TtoR;
  m.kind = MessageKind::Ordering;
  m.payload = uint_encode(rank, bit_width(total));
  m.ideal_bits = log2_factorial(d);
  return m;
}

Message msg_moment(u128 value, int weight_power, int n) {
  if (weight_power < 1 || weight_power > 3) throw ContractViolation("moment weight outside 1..3");
  const int per_symbol = bit_width(static_cast<u128>(n) + 1);
  const int width = (weight_power + 2) * per_symbol;
  Message m;
  m.direction = Direction::TtoR;
  m.kind = MessageKind::Moments;
  m.payload = uint_encode(value, width);
  m.ideal_bits = (weight_power + 2) * log2d(n + 1);
  return m;
}

Message msg_raw_substring(std::span<const int> symbols, int n) {
  const int per_symbol = bit_width(static_cast<u128>(n));
  Message m;
  m.direction = Direction::TtoR;
  m.kind = MessageKind::RawSubstring;
  for (int s : symbols) {
    if (s < 1 || s > n) throw ContractViolation("raw symbol outside [1, n]");
    m.payload.append_uint(static_cast<u128>(s - 1), per_symbol);
  }
  m.ideal_bits = static_cast<double>(symbols.size()) * log2d(n);
  return m;
}

Message msg_position(int pos, int n, bool deviation) {
  if (pos < 1 || pos > n) throw ContractViolation("position outside [1, n]");
  Message m;
  m.direction = Direction::RtoT;
  m.kind = MessageKind::Position;
  m.payload = uint_encode(static_cast<u128>(pos - 1), bit_width(static_cast<u128>(n)));
  m.ideal_bits = log2d(n);
  m.deviation = deviation;
  return m;
}

}  // namespace ranksync

#include <algorithm>

#include "ranksync/error.hpp"
#include "ranksync/protocols.hpp"

namespace ranksync {
namespace {

// Receiver verdicts; one per anchor round.  A round with a far-moved anchor
// needs no verdict at all: the displacement names the whole rearrangement and
// the receiver undoes it locally.
constexpr int kParseLeft = 0;   // left window disordered, recurse into it
constexpr int kParseRight = 1;  // left window intact, recurse right
constexpr int kFixShiftedLeft = 2;   // anchor one left: a left-window symbol sits right
constexpr int kFixShiftedRight = 3;  // anchor one right: a right-window symbol sits left
constexpr int kVerdictWire = 3;
constexpr double kVerdictIdeal = 3.0;

constexpr int kRawCutoff = 3;

int anchor_position(int lo, int hi) { return lo + (hi - lo + 2) / 2 - 1; }

class MoveTransmitter : public Party {
 public:
  explicit MoveTransmitter(const Permutation& x) : x_(x) {}

  void start(std::vector<Message>& out) override { descend(1, x_.size(), out); }

  void on_message(const Message& m, std::vector<Message>& out) override {
    if (m.kind != MessageKind::Feedback) throw ContractViolation("expected a verdict");
    const int code = static_cast<int>(m.payload.read_uint(0, m.payload.size()));
    const int c = anchor_position(lo_, hi_);
    switch (code) {
      case kParseLeft: descend(lo_, c - 1, out); return;
      case kParseRight: descend(c + 1, hi_, out); return;
      case kFixShiftedLeft: {
        // The receiver knows the left window's syndrome already; the right
        // window's checksum exposes the strayed symbol by value.
        std::vector<int> right(x_.values().begin() + c, x_.values().begin() + hi_);
        out.push_back(msg_checksum(checksum(right), static_cast<int>(right.size()), x_.size()));
        done_ = true;
        return;
      }
      case kFixShiftedRight: {
        std::vector<int> left(x_.values().begin() + (lo_ - 1), x_.values().begin() + (c - 1));
        std::vector<int> right(x_.values().begin() + c, x_.values().begin() + hi_);
        out.push_back(msg_checksum(checksum(left), static_cast<int>(left.size()), x_.size()));
        out.push_back(msg_vt(sequence_vt_syndrome(right), static_cast<int>(right.size())));
        done_ = true;
        return;
      }
      default: throw ContractViolation("verdict code out of range");
    }
  }

  bool done() const override { return done_; }

 private:
  void descend(int lo, int hi, std::vector<Message>& out) {
    lo_ = lo;
    hi_ = hi;
    if (hi - lo + 1 <= kRawCutoff) {
      std::vector<int> window(x_.values().begin() + (lo - 1), x_.values().begin() + hi);
      out.push_back(msg_raw_substring(window, x_.size()));
      done_ = true;
      return;
    }
    const int c = anchor_position(lo, hi);
    std::vector<int> left(x_.values().begin() + (lo - 1), x_.values().begin() + (c - 1));
    out.push_back(msg_anchor(x_.at(c), x_.size()));
    out.push_back(msg_vt(sequence_vt_syndrome(left), static_cast<int>(left.size())));
  }

  const Permutation& x_;
  int lo_ = 1, hi_ = 0;
  bool done_ = false;
};

class MoveReceiver : public Party {
 public:
  MoveReceiver(const Permutation& y, std::vector<TranslocationProbe>* trace)
      : y_(y.values()), n_(y.size()), lo_(1), hi_(n_), trace_(trace) {}

  void on_message(const Message& m, std::vector<Message>& out) override {
    switch (m.kind) {
      case MessageKind::Anchor:
        anchor_symbol_ = static_cast<int>(m.payload.read_uint(0, m.payload.size())) + 1;
        return;
      case MessageKind::VtSyndrome:
        if (awaiting_fix_vt_) {
          finish_shifted_right(static_cast<int>(m.payload.read_uint(0, m.payload.size())));
          return;
        }
        handle_round(static_cast<int>(m.payload.read_uint(0, m.payload.size())), out);
        return;
      case MessageKind::Checksum:
        handle_fix_checksum(static_cast<long long>(m.payload.read_uint(0, m.payload.size())));
        return;
      case MessageKind::RawSubstring:
        overwrite_window(m);
        return;
      default: throw ContractViolation("unexpected message kind");
    }
  }

  bool done() const override { return done_; }

  PartialPermutation result() const {
    if (!done_) throw ContractViolation("result read before resolution");
    return {y_, n_};
  }

 private:
  void handle_round(int left_syndrome, std::vector<Message>& out) {
    ++round_;
    const int c = anchor_position(lo_, hi_);
    int q = 0;  // observed position of the anchor symbol
    for (int i = 1; i <= n_; ++i) {
      if (y_[i - 1] == anchor_symbol_) {
        q = i;
        break;
      }
    }
    if (q == 0) throw ContractViolation("anchor symbol missing from the sequence");
    const int shift = q - c;
    if (trace_) trace_->push_back(TranslocationProbe{round_, hi_ - lo_ + 1, shift});

    if (shift == 0) {
      const int left_len = c - lo_;
      std::vector<int> left(y_.begin() + (lo_ - 1), y_.begin() + (c - 1));
      const bool left_intact =
          left_len <= 1 || sequence_vt_syndrome(left) == left_syndrome;
      if (left_intact) {
        out.push_back(verdict(kParseRight));
        lo_ = c + 1;
      } else {
        out.push_back(verdict(kParseLeft));
        hi_ = c - 1;
      }
      return;
    }
    if (shift == -1 || shift == 1) {
      left_syndrome_ = left_syndrome;
      fix_anchor_ = c;
      out.push_back(verdict(shift == -1 ? kFixShiftedLeft : kFixShiftedRight));
      fix_shift_ = shift;
      return;
    }
    // The anchor itself is the moved element; undoing its move restores
    // everything, and the transmitter needs no word of it.
    y_.erase(y_.begin() + (q - 1));
    y_.insert(y_.begin() + (c - 1), anchor_symbol_);
    done_ = true;
  }

  void handle_fix_checksum(long long cs) {
    const int c = fix_anchor_;
    if (fix_shift_ == -1) {
      // Anchor sits one early: some left-window symbol strayed into the
      // suffix.  Its value falls out of the suffix checksum; the left
      // window's syndrome pins where it reinserts.
      std::vector<int> suffix(y_.begin() + (c - 1), y_.begin() + hi_);
      const int stray = static_cast<int>(checksum(suffix) - cs);
      remove_value(stray);
      std::vector<int> window(y_.begin() + (lo_ - 1), y_.begin() + (c - 2));
      const std::vector<int> fixed = reinsert_by_vt(window, stray, left_syndrome_);
      std::vector<int> rebuilt;
      rebuilt.reserve(n_);
      rebuilt.insert(rebuilt.end(), y_.begin(), y_.begin() + (lo_ - 1));
      rebuilt.insert(rebuilt.end(), fixed.begin(), fixed.end());
      rebuilt.insert(rebuilt.end(), y_.begin() + (c - 2), y_.end());
      y_ = std::move(rebuilt);
      done_ = true;
      return;
    }
    // Anchor sits one late: a right-window symbol strayed into the prefix.
    std::vector<int> prefix(y_.begin() + (lo_ - 1), y_.begin() + c);
    stray_ = static_cast<int>(checksum(prefix) - cs);
    awaiting_fix_vt_ = true;
  }

  void finish_shifted_right(int right_syndrome) {
    const int c = fix_anchor_;
    remove_value(stray_);
    std::vector<int> window(y_.begin() + c, y_.begin() + (hi_ - 1));
    const std::vector<int> fixed = reinsert_by_vt(window, stray_, right_syndrome);
    std::vector<int> rebuilt;
    rebuilt.reserve(n_);
    rebuilt.insert(rebuilt.end(), y_.begin(), y_.begin() + c);
    rebuilt.insert(rebuilt.end(), fixed.begin(), fixed.end());
    rebuilt.insert(rebuilt.end(), y_.begin() + (hi_ - 1), y_.end());
    y_ = std::move(rebuilt);
    awaiting_fix_vt_ = false;
    done_ = true;
  }

  void overwrite_window(const Message& m) {
    const int per_symbol = bit_width(static_cast<u128>(n_));
    const int len = hi_ - lo_ + 1;
    if (m.wire_bits() != per_symbol * len)
      throw ContractViolation("raw window length mismatch");
    for (int i = 0; i < len; ++i)
      y_[lo_ - 1 + i] =
          static_cast<int>(m.payload.read_uint(i * per_symbol, per_symbol)) + 1;
    done_ = true;
  }

  void remove_value(int v) {
    if (v < 1 || v > n_) throw ContractViolation("checksum names an impossible symbol");
    const auto it = std::find(y_.begin(), y_.end(), v);
    if (it == y_.end()) throw ContractViolation("strayed symbol not present");
    y_.erase(it);
  }

  static Message verdict(int code) {
    return msg_feedback(Direction::RtoT, code, kVerdictWire, kVerdictIdeal);
  }

  std::vector<int> y_;
  int n_;
  int lo_, hi_;
  int round_ = 0;
  int anchor_symbol_ = 0;
  int left_syndrome_ = -1;
  int fix_anchor_ = 0;
  int fix_shift_ = 0;
  int stray_ = 0;
  bool awaiting_fix_vt_ = false;
  std::vector<TranslocationProbe>* trace_;
  bool done_ = false;
};

}  // namespace

SessionParties make_translocation_session(const Permutation& x, const Permutation& y,
                                          std::vector<TranslocationProbe>* trace) {
  auto receiver = std::make_unique<MoveReceiver>(y, trace);
  MoveReceiver* r = receiver.get();
  return {std::make_unique<MoveTransmitter>(x), std::move(receiver),
          [r] { return r->result(); }};
}

SyncOutcome sync_translocation(const Permutation& x, const Permutation& y,
                               std::vector<TranslocationProbe>* trace) {
  SessionParties parties = make_translocation_session(x, y, trace);
  Transcript t = run_session(*parties.transmitter, *parties.receiver);
  PartialPermutation restored = parties.result();
  const bool ok = restored.values() == x.values();
  return {std::move(restored), std::move(t), ok};
}

}  // namespace ranksync

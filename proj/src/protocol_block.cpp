#include <algorithm>

#include "ranksync/error.hpp"
#include "ranksync/protocols.hpp"

namespace ranksync {
namespace {

// A block of d consecutive deletions removes exactly one symbol from each of
// the d stride-d subsequences, and positions after the block keep their
// residue class, so subsequence k of the damaged copy is subsequence k of the
// original minus one symbol.  The within-subsequence indices of the removed
// symbols step down by one exactly once as k runs 1..d; locating that step
// with a binary search over subsequence syndrome/checksum pairs pins the
// block's start position.

// Verdict codes on the receiver side.
constexpr int kSearchInit = 0;    // step position unknown, begin probing
constexpr int kBranchLower = 0;   // probe lies before the step
constexpr int kBranchUpper = 1;   // probe lies at or after the step

class BlockTransmitter : public Party {
 public:
  BlockTransmitter(const Permutation& x, int d) : x_(x), d_(d) {
    subsequences_ = deinterleave(x_.values(), d_);
  }

  void start(std::vector<Message>& out) override {
    send_pair(1, out);
    if (d_ >= 2) send_pair(d_, out);
    if (d_ == 1) done_ = true;  // the pair resolves a single deletion outright
    lo_ = 1;
    hi_ = d_;
  }

  void on_message(const Message& m, std::vector<Message>& out) override {
    if (m.kind == MessageKind::Feedback) {
      const int code = static_cast<int>(m.payload.read_uint(0, m.payload.size()));
      // With d == 2 the opening pairs already settle the step, so the only
      // verdict the receiver ever sends is the found-index report; with
      // d >= 3 that report is at least two bits wide, leaving one-bit
      // messages unambiguous as search traffic.
      const bool found_report = d_ == 2 || m.wire_bits() > 1;
      if (found_report) {
        found_k_ = code + 1;
        if (found_k_ < 1 || found_k_ > d_) throw ContractViolation("step index out of range");
        searching_ = false;
        return;  // the absolute position report comes next
      }
      if (!searching_) {
        if (code != kSearchInit) throw ContractViolation("unknown opening verdict");
        searching_ = true;
      } else {
        if (code == kBranchUpper)
          hi_ = probe_;
        else
          lo_ = probe_;
      }
      if (hi_ - lo_ <= 1) throw ContractViolation("probe requested after the search closed");
      probe_ = (lo_ + hi_ + 1) / 2;
      send_pair(probe_, out);
      return;
    }
    if (m.kind == MessageKind::Position) {
      const int pos = static_cast<int>(m.payload.read_uint(0, m.payload.size())) + 1;
      if (pos < 1 || pos + d_ - 1 > x_.size())
        throw ContractViolation("reported block does not fit the sequence");
      if (found_k_ == 0 || (pos - 1) % d_ + 1 != found_k_)
        throw ContractViolation("reported block start contradicts the found index");
      std::vector<int> block(x_.values().begin() + (pos - 1),
                             x_.values().begin() + (pos - 1) + d_);
      std::vector<int> sorted = block;
      std::sort(sorted.begin(), sorted.end());
      out.push_back(msg_ordering(ordering_rank(block, sorted), d_));
      done_ = true;
      return;
    }
    throw ContractViolation("unexpected message kind");
  }

  bool done() const override { return done_; }

 private:
  void send_pair(int k, std::vector<Message>& out) {
    const std::vector<int>& sub = subsequences_[k - 1];
    out.push_back(msg_vt(sequence_vt_syndrome(sub), static_cast<int>(sub.size())));
    out.push_back(msg_checksum(checksum(sub), static_cast<int>(sub.size()), x_.size()));
  }

  const Permutation& x_;
  int d_;
  std::vector<std::vector<int>> subsequences_;
  int lo_ = 1, hi_ = 1, probe_ = 0;
  bool searching_ = false;
  int found_k_ = 0;
  bool done_ = false;
};

class BlockReceiver : public Party {
 public:
  BlockReceiver(const PartialPermutation& y, int d)
      : y_(y.values()), n_(y.universe()), d_(d) {
    if (static_cast<int>(y_.size()) != n_ - d_)
      throw ContractViolation("receiver length disagrees with the block span");
    y_subsequences_ = deinterleave(y_, d_);
  }

  void on_message(const Message& m, std::vector<Message>& out) override {
    switch (m.kind) {
      case MessageKind::VtSyndrome:
        pending_syndrome_ = static_cast<int>(m.payload.read_uint(0, m.payload.size()));
        return;
      case MessageKind::Checksum: handle_pair(m, out); return;
      case MessageKind::Ordering: splice(m); return;
      default: throw ContractViolation("unexpected message kind");
    }
  }

  bool done() const override { return done_; }

  PartialPermutation result() const {
    if (!done_) throw ContractViolation("result read before resolution");
    return {y_, n_};
  }

 private:
  // Index (1-based) at which the missing symbol of subsequence k reinserts.
  int resolve_index(int k, int syndrome, long long cs) {
    const std::vector<int>& sub = y_subsequences_[k - 1];
    const int missing = static_cast<int>(cs - checksum(sub));
    if (missing < 1 || missing > n_) throw ContractViolation("checksum names an impossible symbol");
    const std::vector<int> full = reinsert_by_vt(sub, missing, syndrome);
    for (size_t i = 0; i < full.size(); ++i)
      if (full[i] == missing) return static_cast<int>(i) + 1;
    throw ContractViolation("reinserted symbol vanished");
  }

  void handle_pair(const Message& m, std::vector<Message>& out) {
    const long long cs = static_cast<long long>(m.payload.read_uint(0, m.payload.size()));
    const int syndrome = pending_syndrome_;
    if (step_1_ == 0) {
      if (d_ == 1) {
        // One deletion: the whole sequence is its own subsequence, and the
        // pair alone pins the missing symbol and its position.
        finish_local(cs, syndrome);
        return;
      }
      step_1_ = resolve_index(1, syndrome, cs);
      return;
    }
    if (step_d_ == 0) {
      step_d_ = resolve_index(d_, syndrome, cs);
      if (step_1_ != step_d_ && step_1_ != step_d_ + 1)
        throw ContractViolation("subsequence step shape is impossible for one block");
      if (step_1_ == step_d_) {
        announce(1, out);
      } else if (d_ == 2) {
        announce(2, out);
      } else {
        lo_ = 1;
        hi_ = d_;
        out.push_back(msg_feedback(Direction::RtoT, kSearchInit, 1, 1.0));
      }
      return;
    }
    // A probe during the search.
    const int probe = (lo_ + hi_ + 1) / 2;
    const int step = resolve_index(probe, syndrome, cs);
    if (step == step_d_) {
      hi_ = probe;
      if (hi_ - lo_ == 1) {
        announce(hi_, out);
        return;
      }
      out.push_back(msg_feedback(Direction::RtoT, kBranchUpper, 1, 1.0));
    } else if (step == step_1_) {
      lo_ = probe;
      if (hi_ - lo_ == 1) {
        announce(hi_, out);
        return;
      }
      out.push_back(msg_feedback(Direction::RtoT, kBranchLower, 1, 1.0));
    } else {
      throw ContractViolation("probe step outside the two admissible values");
    }
  }

  void announce(int k, std::vector<Message>& out) {
    p_star_ = (step_d_ - 1) * d_ + k;
    out.push_back(msg_feedback(Direction::RtoT, k - 1, bit_width(static_cast<u128>(d_)),
                               log2_u128(static_cast<u128>(d_))));
    // The closed-form accounting assumes the transmitter can locate the block
    // on its own; this report is the interactive substitute, so it rides
    // outside the comparable totals.
    out.push_back(msg_position(p_star_, n_, /*deviation=*/true));
  }

  void splice(const Message& m) {
    std::vector<int> missing;
    {
      std::vector<uint8_t> seen(static_cast<size_t>(n_) + 1, 0);
      for (int v : y_) seen[v] = 1;
      for (int v = 1; v <= n_; ++v)
        if (!seen[v]) missing.push_back(v);
    }
    const std::vector<int> block =
        ordering_unrank(m.payload.read_uint(0, m.payload.size()), missing);
    y_.insert(y_.begin() + (p_star_ - 1), block.begin(), block.end());
    done_ = true;
  }

  void finish_local(long long cs, int syndrome) {
    const int missing = static_cast<int>(cs - checksum(y_));
    if (missing < 1 || missing > n_) throw ContractViolation("checksum names an impossible symbol");
    y_ = reinsert_by_vt(y_, missing, syndrome);
    done_ = true;
  }

  std::vector<int> y_;
  int n_;
  int d_;
  std::vector<std::vector<int>> y_subsequences_;
  int pending_syndrome_ = -1;
  int step_1_ = 0, step_d_ = 0;
  int lo_ = 1, hi_ = 1;
  int p_star_ = 0;
  bool done_ = false;
};

}  // namespace

SessionParties make_block_deletion_session(const Permutation& x, const PartialPermutation& y,
                                           int d) {
  auto receiver = std::make_unique<BlockReceiver>(y, d);
  BlockReceiver* r = receiver.get();
  return {std::make_unique<BlockTransmitter>(x, d), std::move(receiver),
          [r] { return r->result(); }};
}

SyncOutcome sync_block_deletion(const Permutation& x, const PartialPermutation& y, int d) {
  SessionParties parties = make_block_deletion_session(x, y, d);
  Transcript t = run_session(*parties.transmitter, *parties.receiver);
  PartialPermutation restored = parties.result();
  const bool ok = restored.values() == x.values();
  return {std::move(restored), std::move(t), ok};
}

}  // namespace ranksync

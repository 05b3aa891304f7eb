#include <algorithm>
#include <deque>
#include <optional>

#include "ranksync/error.hpp"
#include "ranksync/protocols.hpp"

namespace ranksync {
namespace {

// --- Interactive subset exchange ------------------------------------------

class SubsetTransmitter : public Party {
 public:
  SubsetTransmitter(const Permutation& x, int d) : x_(x), d_(d) {}

  void on_message(const Message& m, std::vector<Message>& out) override {
    if (m.kind != MessageKind::Subset) throw ContractViolation("expected the missing-symbol subset");
    const int n = x_.size();
    const std::vector<int> missing =
        subset_unrank(m.payload.read_uint(0, m.payload.size()), n, d_);
    std::vector<uint8_t> is_missing(static_cast<size_t>(n) + 1, 0);
    for (int v : missing) is_missing[v] = 1;

    std::vector<int> positions;        // where the receiver's misses sit in x
    std::vector<int> symbols_in_order;  // their symbols, in position order
    for (int p = 1; p <= n; ++p) {
      if (is_missing[x_.at(p)]) {
        positions.push_back(p);
        symbols_in_order.push_back(x_.at(p));
      }
    }
    if (static_cast<int>(positions.size()) != d_)
      throw ContractViolation("missing-symbol count disagrees with d");

    out.push_back(msg_subset(subset_rank(positions, n), n, d_, Direction::TtoR));
    out.push_back(msg_ordering(ordering_rank(symbols_in_order, missing), d_));
    done_ = true;
  }

  bool done() const override { return done_; }

 private:
  const Permutation& x_;
  int d_;
  bool done_ = false;
};

class SubsetReceiver : public Party {
 public:
  SubsetReceiver(const PartialPermutation& y, int d) : result_(y), d_(d) {}

  void start(std::vector<Message>& out) override {
    missing_ = missing_symbols(result_);
    if (static_cast<int>(missing_.size()) != d_)
      throw ContractViolation("receiver is not missing exactly d symbols");
    out.push_back(
        msg_subset(subset_rank(missing_, result_.universe()), result_.universe(), d_,
                   Direction::RtoT));
  }

  void on_message(const Message& m, std::vector<Message>&) override {
    const int n = result_.universe();
    if (m.kind == MessageKind::Subset) {
      positions_ = subset_unrank(m.payload.read_uint(0, m.payload.size()), n, d_);
      return;
    }
    if (m.kind != MessageKind::Ordering) throw ContractViolation("expected positions + ordering");
    const std::vector<int> symbols =
        ordering_unrank(m.payload.read_uint(0, m.payload.size()), missing_);

    std::vector<int> restored(static_cast<size_t>(n), 0);
    std::vector<uint8_t> is_gap(static_cast<size_t>(n) + 1, 0);
    for (size_t i = 0; i < positions_.size(); ++i) {
      is_gap[positions_[i]] = 1;
      restored[positions_[i] - 1] = symbols[i];
    }
    int next = 0;
    for (int p = 1; p <= n; ++p)
      if (!is_gap[p]) restored[p - 1] = result_.at(++next);
    result_ = PartialPermutation(std::move(restored), n);
    done_ = true;
  }

  bool done() const override { return done_; }

  PartialPermutation result() const { return result_; }

 private:
  PartialPermutation result_;
  int d_;
  std::vector<int> missing_;
  std::vector<int> positions_;
  bool done_ = false;
};

// --- One-way insertion sync ------------------------------------------------

class InsertionTransmitter : public Party {
 public:
  InsertionTransmitter(const PartialPermutation& x, int d) : x_(x), d_(d) {}

  void start(std::vector<Message>& out) override {
    const std::vector<int> extras = missing_symbols(x_);
    if (static_cast<int>(extras.size()) != d_)
      throw ContractViolation("short sequence is not missing exactly d symbols");
    out.push_back(msg_subset(subset_rank(extras, x_.universe()), x_.universe(), d_,
                             Direction::TtoR));
    done_ = true;
  }

  void on_message(const Message&, std::vector<Message>&) override {
    throw ContractViolation("one-way transmitter got a reply");
  }

  bool done() const override { return done_; }

 private:
  const PartialPermutation& x_;
  int d_;
  bool done_ = false;
};

class InsertionReceiver : public Party {
 public:
  InsertionReceiver(const Permutation& y, int d) : result_(y.as_partial()), d_(d) {}

  void on_message(const Message& m, std::vector<Message>&) override {
    if (m.kind != MessageKind::Subset) throw ContractViolation("expected the inserted-symbol subset");
    const int n = result_.universe();
    const std::vector<int> extras =
        subset_unrank(m.payload.read_uint(0, m.payload.size()), n, d_);
    std::vector<uint8_t> is_extra(static_cast<size_t>(n) + 1, 0);
    for (int v : extras) is_extra[v] = 1;
    std::vector<int> kept;
    kept.reserve(result_.size() - d_);
    for (int v : result_.values())
      if (!is_extra[v]) kept.push_back(v);
    result_ = PartialPermutation(std::move(kept), n);
    done_ = true;
  }

  bool done() const override { return done_; }

  PartialPermutation result() const { return result_; }

 private:
  PartialPermutation result_;
  int d_;
  bool done_ = false;
};

// --- Limited-feedback recursion over anchors -------------------------------

// Receiver verdict alphabet.  A composite verdict classifies the two halves
// around a located anchor; the two miss verdicts cover a deleted anchor, split
// by whether one deletion remains (the transmitter cannot track deletion
// counts itself, so the receiver must say which).
enum Verdict : int { kNone = 0, kSingle = 1, kRecurse = 2 };
constexpr int kMissContinue = 9;
constexpr int kMissResolved = 10;
constexpr int kFeedbackWire = 4;
constexpr double kFeedbackIdeal = 3.0;

int compose_verdict(int left, int right) { return left * 3 + right; }

int classify(int del) { return del == 0 ? kNone : del == 1 ? kSingle : kRecurse; }

// One aligned work item.  x_positions is the transmitter-side substring as
// explicit absolute positions (anchors that turned out deleted are excised,
// which makes the list non-contiguous); the receiver side is always the
// contiguous run y_lo..y_hi.  Both parties maintain identical lists: every
// structural step depends only on lengths and deletion counts, never on
// symbol values, so the receiver can mirror the transmitter exactly.
struct AnchorTask {
  std::vector<int> x_positions;
  int y_lo = 1;
  int y_hi = 0;
  int del = 0;

  int x_len() const { return static_cast<int>(x_positions.size()); }
  int y_len() const { return y_hi - y_lo + 1; }
  int anchor_index() const { return (x_len() + 1) / 2; }  // 1-based, middle
};

class AnchorTransmitter : public Party {
 public:
  AnchorTransmitter(const Permutation& x, int d) : x_(x), d_(d) {}

  void start(std::vector<Message>& out) override {
    const int n = x_.size();
    if (d_ == 0) {
      done_ = true;
      return;
    }
    if (d_ == 1) {
      send_resolution(all_positions(1, n), out);
      done_ = true;
      return;
    }
    AnchorTask root;
    root.x_positions = all_positions(1, n);
    root.y_lo = 1;
    root.y_hi = n - d_;
    root.del = d_;
    worklist_.push_back(std::move(root));
    emit_anchors(out);
  }

  void on_message(const Message& m, std::vector<Message>& out) override {
    if (m.kind != MessageKind::Feedback) throw ContractViolation("expected a verdict");
    if (cursor_ >= worklist_.size()) throw ContractViolation("verdict with no task pending");
    AnchorTask& task = worklist_[cursor_++];
    const int code = static_cast<int>(m.payload.read_uint(0, m.payload.size()));
    const int a_idx = task.anchor_index();

    if (code == kMissContinue || code == kMissResolved) {
      // The anchor turned out deleted.  Only the receiver knows how many
      // deletions remain; the verdict says whether one remains (answer with a
      // checksum/syndrome pair) or not (keep recursing on the excised list).
      task.x_positions.erase(task.x_positions.begin() + (a_idx - 1));
      if (code == kMissResolved) {
        send_resolution(task.x_positions, out);
      } else {
        next_.push_back(std::move(task));
      }
    } else if (code >= 0 && code <= 8) {
      const int left = code / 3, right = code % 3;
      AnchorTask lchild, rchild;
      lchild.x_positions.assign(task.x_positions.begin(),
                                task.x_positions.begin() + (a_idx - 1));
      rchild.x_positions.assign(task.x_positions.begin() + a_idx, task.x_positions.end());
      // The y bounds of the children are fixed by the receiver's split; the
      // transmitter only needs them for width bookkeeping, which depends on
      // x-side lengths alone, so it leaves them unset.
      handle_child(left, std::move(lchild), out);
      handle_child(right, std::move(rchild), out);
    } else {
      throw ContractViolation("verdict code out of range");
    }

    if (cursor_ == worklist_.size()) {
      worklist_ = std::move(next_);
      next_.clear();
      cursor_ = 0;
      if (worklist_.empty())
        done_ = true;
      else
        emit_anchors(out);
    }
  }

  bool done() const override { return done_; }

 private:
  static std::vector<int> all_positions(int lo, int hi) {
    std::vector<int> v(hi - lo + 1);
    for (int i = lo; i <= hi; ++i) v[i - lo] = i;
    return v;
  }

  void handle_child(int verdict, AnchorTask&& child, std::vector<Message>& out) {
    if (verdict == kNone) return;
    if (verdict == kSingle) {
      send_resolution(child.x_positions, out);
      return;
    }
    next_.push_back(std::move(child));
  }

  // Checksum + descent syndrome of the substring at these positions; enough
  // for the receiver to place the one symbol it is missing.
  void send_resolution(const std::vector<int>& positions, std::vector<Message>& out) {
    const int n = x_.size();
    std::vector<int> sub;
    sub.reserve(positions.size());
    for (int p : positions) sub.push_back(x_.at(p));
    out.push_back(msg_checksum(checksum(sub), static_cast<int>(sub.size()), n));
    out.push_back(msg_vt(sequence_vt_syndrome(sub), static_cast<int>(sub.size())));
  }

  void emit_anchors(std::vector<Message>& out) {
    for (const AnchorTask& t : worklist_) {
      const int p = t.x_positions[t.anchor_index() - 1];
      out.push_back(msg_anchor(x_.at(p), x_.size()));
    }
  }

  const Permutation& x_;
  int d_;
  std::vector<AnchorTask> worklist_;
  std::vector<AnchorTask> next_;
  size_t cursor_ = 0;
  bool done_ = false;
};

class AnchorReceiver : public Party {
 public:
  AnchorReceiver(const PartialPermutation& y, int d)
      : y_(y.values()), n_(y.universe()), d_(d), restored_(static_cast<size_t>(n_), 0) {
    if (static_cast<int>(y_.size()) != n_ - d_)
      throw ContractViolation("receiver length disagrees with d");
    if (d_ == 0) {
      for (int i = 0; i < n_; ++i) restored_[i] = y_[i];
      unresolved_ = 0;
    } else if (d_ == 1) {
      pending_.push_back(PendingResolution{all_positions(1, n_), 1, n_ - 1});
      unresolved_ = 1;
    } else {
      AnchorTask root;
      root.x_positions = all_positions(1, n_);
      root.y_lo = 1;
      root.y_hi = n_ - d_;
      root.del = d_;
      worklist_.push_back(std::move(root));
      unresolved_ = 1;
    }
  }

  void on_message(const Message& m, std::vector<Message>& out) override {
    switch (m.kind) {
      case MessageKind::Anchor: handle_anchor(m, out); return;
      case MessageKind::Checksum:
        pending_checksum_ = static_cast<long long>(m.payload.read_uint(0, m.payload.size()));
        return;
      case MessageKind::VtSyndrome: handle_resolution(m); return;
      default: throw ContractViolation("unexpected message kind");
    }
  }

  bool done() const override { return unresolved_ == 0; }

  PartialPermutation result() const {
    if (unresolved_ != 0) throw ContractViolation("result read before resolution");
    return {restored_, n_};
  }

 private:
  struct PendingResolution {
    std::vector<int> x_positions;
    int y_lo = 1;
    int y_hi = 0;
  };

  static std::vector<int> all_positions(int lo, int hi) {
    std::vector<int> v(hi - lo + 1);
    for (int i = lo; i <= hi; ++i) v[i - lo] = i;
    return v;
  }

  void handle_anchor(const Message& m, std::vector<Message>& out) {
    if (cursor_ >= worklist_.size()) throw ContractViolation("anchor with no task pending");
    AnchorTask& task = worklist_[cursor_++];
    const int symbol = static_cast<int>(m.payload.read_uint(0, m.payload.size())) + 1;
    const int a_idx = task.anchor_index();

    int r_y = 0;  // 1-based rank of the anchor within the y segment, 0 = missed
    for (int i = task.y_lo; i <= task.y_hi; ++i) {
      if (y_[i - 1] == symbol) {
        r_y = i - task.y_lo + 1;
        break;
      }
    }

    if (r_y == 0) {
      const int anchor_pos = task.x_positions[a_idx - 1];
      restored_[anchor_pos - 1] = symbol;  // the anchor itself was deleted
      task.x_positions.erase(task.x_positions.begin() + (a_idx - 1));
      task.del -= 1;
      if (task.del == 1) {
        out.push_back(feedback(kMissResolved));
        pending_.push_back(PendingResolution{task.x_positions, task.y_lo, task.y_hi});
        ++unresolved_;
      } else {
        out.push_back(feedback(kMissContinue));
        next_.push_back(std::move(task));
      }
    } else {
      const int s = a_idx - r_y;  // deletions to the anchor's left
      if (s < 0 || s > task.del) throw ContractViolation("anchor split out of range");
      const int anchor_y = task.y_lo + r_y - 1;
      restored_[task.x_positions[a_idx - 1] - 1] = symbol;

      AnchorTask lchild, rchild;
      lchild.x_positions.assign(task.x_positions.begin(),
                                task.x_positions.begin() + (a_idx - 1));
      lchild.y_lo = task.y_lo;
      lchild.y_hi = anchor_y - 1;
      lchild.del = s;
      rchild.x_positions.assign(task.x_positions.begin() + a_idx, task.x_positions.end());
      rchild.y_lo = anchor_y + 1;
      rchild.y_hi = task.y_hi;
      rchild.del = task.del - s;
      out.push_back(feedback(compose_verdict(classify(lchild.del), classify(rchild.del))));
      handle_child(std::move(lchild));
      handle_child(std::move(rchild));
    }

    if (cursor_ == worklist_.size()) {
      --unresolved_;  // this frontier is accounted for; children took its place
      worklist_ = std::move(next_);
      next_.clear();
      cursor_ = 0;
      if (!worklist_.empty()) ++unresolved_;
    }
  }

  void handle_child(AnchorTask&& child) {
    if (child.del == 0) {
      for (int i = 0; i < child.x_len(); ++i)
        restored_[child.x_positions[i] - 1] = y_[child.y_lo - 1 + i];
      return;
    }
    if (child.del == 1) {
      pending_.push_back(PendingResolution{std::move(child.x_positions), child.y_lo, child.y_hi});
      ++unresolved_;
      return;
    }
    next_.push_back(std::move(child));
  }

  // A checksum/syndrome pair resolves the oldest single-deletion item.
  void handle_resolution(const Message& m) {
    if (pending_.empty()) throw ContractViolation("resolution with nothing pending");
    if (!pending_checksum_) throw ContractViolation("syndrome arrived before its checksum");
    const PendingResolution task = std::move(pending_.front());
    pending_.pop_front();
    const int target = static_cast<int>(m.payload.read_uint(0, m.payload.size()));

    std::vector<int> segment;
    segment.reserve(task.y_hi - task.y_lo + 1);
    for (int i = task.y_lo; i <= task.y_hi; ++i) segment.push_back(y_[i - 1]);
    const int missing = static_cast<int>(*pending_checksum_ - checksum(segment));
    pending_checksum_.reset();
    if (missing < 1 || missing > n_) throw ContractViolation("checksum names an impossible symbol");

    const std::vector<int> full = reinsert_by_vt(segment, missing, target);
    if (full.size() != task.x_positions.size())
      throw ContractViolation("resolved substring length mismatch");
    for (size_t i = 0; i < full.size(); ++i) restored_[task.x_positions[i] - 1] = full[i];
    --unresolved_;
  }

  static Message feedback(int code) {
    return msg_feedback(Direction::RtoT, code, kFeedbackWire, kFeedbackIdeal);
  }

  std::vector<int> y_;
  int n_;
  int d_;
  std::vector<int> restored_;

  std::vector<AnchorTask> worklist_;
  std::vector<AnchorTask> next_;
  size_t cursor_ = 0;
  std::deque<PendingResolution> pending_;
  std::optional<long long> pending_checksum_;
  int unresolved_ = 0;
};

}  // namespace

SessionParties make_deletions_interactive_session(const Permutation& x,
                                                  const PartialPermutation& y, int d) {
  auto receiver = std::make_unique<SubsetReceiver>(y, d);
  SubsetReceiver* r = receiver.get();
  return {std::make_unique<SubsetTransmitter>(x, d), std::move(receiver),
          [r] { return r->result(); }};
}

SyncOutcome sync_deletions_interactive(const Permutation& x, const PartialPermutation& y, int d) {
  SessionParties parties = make_deletions_interactive_session(x, y, d);
  Transcript t = run_session(*parties.transmitter, *parties.receiver);
  PartialPermutation restored = parties.result();
  const bool ok = restored.values() == x.values();
  return {std::move(restored), std::move(t), ok};
}

SessionParties make_insertions_oneway_session(const PartialPermutation& x, const Permutation& y,
                                              int d) {
  auto receiver = std::make_unique<InsertionReceiver>(y, d);
  InsertionReceiver* r = receiver.get();
  return {std::make_unique<InsertionTransmitter>(x, d), std::move(receiver),
          [r] { return r->result(); }};
}

SyncOutcome sync_insertions_oneway(const PartialPermutation& x, const Permutation& y, int d) {
  SessionParties parties = make_insertions_oneway_session(x, y, d);
  Transcript t = run_session(*parties.transmitter, *parties.receiver);
  PartialPermutation restored = parties.result();
  const bool ok = restored.values() == x.values() && restored.universe() == x.universe();
  return {std::move(restored), std::move(t), ok};
}

SessionParties make_deletions_limited_feedback_session(const Permutation& x,
                                                       const PartialPermutation& y, int d) {
  auto receiver = std::make_unique<AnchorReceiver>(y, d);
  AnchorReceiver* r = receiver.get();
  return {std::make_unique<AnchorTransmitter>(x, d), std::move(receiver),
          [r] { return r->result(); }};
}

SyncOutcome sync_deletions_limited_feedback(const Permutation& x, const PartialPermutation& y,
                                            int d) {
  SessionParties parties = make_deletions_limited_feedback_session(x, y, d);
  Transcript t = run_session(*parties.transmitter, *parties.receiver);
  PartialPermutation restored = parties.result();
  const bool ok = restored.values() == x.values();
  return {std::move(restored), std::move(t), ok};
}

}  // namespace ranksync

#include <algorithm>
#include <cmath>

#include "ranksync/error.hpp"
#include "ranksync/protocols.hpp"

namespace ranksync {
namespace {

// Three weighted moments of the whole sequence.  When the receiver's copy
// differs by one swapped pair (a, b) with symbol gap D, the moment gaps are
// (a^w - b^w) * D for w = 1..3, so their ratios eliminate D and leave the
// elementary symmetric functions a+b and ab — a quadratic with integer roots.
u128 weighted_moment(const std::vector<int>& seq, int power) {
  u128 acc = 0;
  for (size_t i = 0; i < seq.size(); ++i) {
    u128 term = static_cast<u128>(seq[i]);
    for (int w = 0; w < power; ++w) term *= static_cast<u128>(i + 1);
    acc += term;
  }
  return acc;
}

class MomentTransmitter : public Party {
 public:
  explicit MomentTransmitter(const Permutation& x) : x_(x) {}

  void start(std::vector<Message>& out) override {
    for (int w = 1; w <= 3; ++w)
      out.push_back(msg_moment(weighted_moment(x_.values(), w), w, x_.size()));
    done_ = true;
  }

  void on_message(const Message&, std::vector<Message>&) override {
    throw ContractViolation("one-way transmitter got a reply");
  }

  bool done() const override { return done_; }

 private:
  const Permutation& x_;
  bool done_ = false;
};

class MomentReceiver : public Party {
 public:
  explicit MomentReceiver(const Permutation& y) : y_(y.values()), n_(y.size()) {}

  void on_message(const Message& m, std::vector<Message>&) override {
    if (m.kind != MessageKind::Moments) throw ContractViolation("expected a moment");
    if (received_ >= 3) throw ContractViolation("more than three moments");
    moments_[received_++] = m.payload.read_uint(0, m.payload.size());
    if (received_ == 3) solve();
  }

  bool done() const override { return done_; }

  PartialPermutation result() const {
    if (!done_) throw ContractViolation("result read before resolution");
    return {y_, n_};
  }

 private:
  void solve() {
    long long delta[3];
    for (int w = 1; w <= 3; ++w) {
      const u128 own = weighted_moment(y_, w);
      const u128 sent = moments_[w - 1];
      // Signed gap; both fit comfortably below 2^63 for any n here.
      delta[w - 1] = static_cast<long long>(sent) - static_cast<long long>(own);
    }
    if (delta[0] == 0) throw ContractViolation("moment gaps do not describe one swap");
    if (delta[1] % delta[0] != 0 || delta[2] % delta[0] != 0)
      throw ContractViolation("moment gaps do not describe one swap");
    const long long pos_sum = delta[1] / delta[0];        // a + b
    const long long square_mix = delta[2] / delta[0];     // a^2 + ab + b^2
    const long long pos_product = pos_sum * pos_sum - square_mix;  // ab
    const long long disc = pos_sum * pos_sum - 4 * pos_product;
    if (disc <= 0) throw ContractViolation("moment gaps do not describe one swap");
    const long long root = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(disc))));
    long long exact = 0;
    for (long long r = std::max<long long>(root - 2, 0); r <= root + 2; ++r)
      if (r * r == disc) exact = r;
    if (exact == 0 || (pos_sum - exact) % 2 != 0)
      throw ContractViolation("moment gaps do not describe one swap");
    const long long a = (pos_sum - exact) / 2;
    const long long b = (pos_sum + exact) / 2;
    if (a < 1 || b > n_ || a == b) throw ContractViolation("swap positions out of range");
    std::swap(y_[a - 1], y_[b - 1]);
    done_ = true;
  }

  std::vector<int> y_;
  int n_;
  u128 moments_[3] = {0, 0, 0};
  int received_ = 0;
  bool done_ = false;
};

}  // namespace

SessionParties make_transposition_oneway_session(const Permutation& x, const Permutation& y) {
  auto receiver = std::make_unique<MomentReceiver>(y);
  MomentReceiver* r = receiver.get();
  return {std::make_unique<MomentTransmitter>(x), std::move(receiver),
          [r] { return r->result(); }};
}

SyncOutcome sync_transposition_oneway(const Permutation& x, const Permutation& y) {
  SessionParties parties = make_transposition_oneway_session(x, y);
  Transcript t = run_session(*parties.transmitter, *parties.receiver);
  PartialPermutation restored = parties.result();
  const bool ok = restored.values() == x.values();
  return {std::move(restored), std::move(t), ok};
}

int anchor_transposition_rounds(const Permutation& x, const Transposition& tau, Rng& rng) {
  const int n = x.size();
  if (tau.a < 1 || tau.b > n || tau.a == tau.b)
    throw std::invalid_argument("invalid swap positions");
  // Probe positions in a uniformly random order until one of the swapped
  // positions comes up; the count of probes is the round count.
  const std::vector<int> order = rng.permutation(n);
  for (int i = 0; i < n; ++i)
    if (order[i] == tau.a || order[i] == tau.b) return i + 1;
  throw std::logic_error("probe order missed both positions");
}

}  // namespace ranksync

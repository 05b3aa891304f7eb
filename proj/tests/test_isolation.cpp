#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <condition_variable>
#include <deque>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "ranksync/errors.hpp"
#include "ranksync/protocols.hpp"

using namespace ranksync;

// The endpoints are supposed to interact only through Messages.  This driver
// runs them on two threads with one FIFO inbox per party — a different
// delivery interleaving from the in-process session loop — and checks that
// each party still emits exactly the same message stream and the receiver
// restores the same sequence.

namespace {

struct Wire {
  std::mutex mu;
  std::condition_variable cv;
  std::deque<Message> to_receiver, to_transmitter;
  std::vector<Message> sent_by_transmitter, sent_by_receiver;
  std::exception_ptr error;
};

void route(Wire& w, std::vector<Message>& out, bool from_transmitter) {
  auto& sent = from_transmitter ? w.sent_by_transmitter : w.sent_by_receiver;
  for (Message& m : out) {
    sent.push_back(m);
    (m.direction == Direction::TtoR ? w.to_receiver : w.to_transmitter).push_back(std::move(m));
  }
  out.clear();
}

void pump(Party& party, Wire& w, bool is_transmitter) {
  auto& inbox = is_transmitter ? w.to_transmitter : w.to_receiver;
  std::vector<Message> out;
  for (;;) {
    std::unique_lock lk(w.mu);
    w.cv.wait(lk, [&] {
      return w.error || !inbox.empty() || (w.to_receiver.empty() && w.to_transmitter.empty());
    });
    if (w.error || inbox.empty()) return;  // quiescent: nothing in flight anywhere
    const Message m = inbox.front();
    inbox.pop_front();
    try {
      party.on_message(m, out);
    } catch (...) {
      w.error = std::current_exception();
      lk.unlock();
      w.cv.notify_all();
      return;
    }
    route(w, out, is_transmitter);
    lk.unlock();
    w.cv.notify_all();
  }
}

struct ThreadedRun {
  std::vector<Message> sent_by_transmitter, sent_by_receiver;
  PartialPermutation restored;
};

ThreadedRun run_threaded(SessionParties parties) {
  Wire w;
  {
    std::lock_guard lk(w.mu);
    std::vector<Message> out;
    parties.transmitter->start(out);
    route(w, out, true);
    parties.receiver->start(out);
    route(w, out, false);
  }
  std::thread t([&] { pump(*parties.transmitter, w, true); });
  std::thread r([&] { pump(*parties.receiver, w, false); });
  w.cv.notify_all();
  t.join();
  r.join();
  if (w.error) std::rethrow_exception(w.error);
  REQUIRE(parties.receiver->done());
  return {std::move(w.sent_by_transmitter), std::move(w.sent_by_receiver), parties.result()};
}

bool same_message(const Message& a, const Message& b) {
  return a.direction == b.direction && a.kind == b.kind && a.payload == b.payload &&
         a.ideal_bits == b.ideal_bits && a.deviation == b.deviation;
}

void check_same_streams(const ThreadedRun& th, const Transcript& seq) {
  std::vector<Message> seq_t, seq_r;
  for (const Message& m : seq.messages())
    (m.direction == Direction::TtoR ? seq_t : seq_r).push_back(m);
  REQUIRE(th.sent_by_transmitter.size() == seq_t.size());
  REQUIRE(th.sent_by_receiver.size() == seq_r.size());
  for (size_t i = 0; i < seq_t.size(); ++i)
    CHECK(same_message(th.sent_by_transmitter[i], seq_t[i]));
  for (size_t i = 0; i < seq_r.size(); ++i)
    CHECK(same_message(th.sent_by_receiver[i], seq_r[i]));
}

// Runs the same instance through both drivers and compares per-party streams.
void compare_drivers(const std::function<SessionParties()>& make, const std::vector<int>& expect) {
  const ThreadedRun th = run_threaded(make());

  SessionParties seq = make();
  const Transcript transcript = run_session(*seq.transmitter, *seq.receiver);
  check_same_streams(th, transcript);
  CHECK(th.restored.values() == expect);
  CHECK(seq.result().values() == expect);
}

}  // namespace

TEST_CASE("threaded and sequential drivers agree: limited feedback deletions") {
  Rng rng(31);
  for (int trial = 0; trial < 12; ++trial) {
    const Permutation x(rng.permutation(40));
    const auto e = sample_error(ErrorModel::Deletions, 40, 3, rng);
    const PartialPermutation y = apply_error(x, e);
    compare_drivers([&] { return make_deletions_limited_feedback_session(x, y, 3); },
                    x.values());
  }
}

TEST_CASE("threaded and sequential drivers agree: interactive deletions") {
  Rng rng(32);
  const Permutation x(rng.permutation(30));
  const auto e = sample_error(ErrorModel::Deletions, 30, 2, rng);
  const PartialPermutation y = apply_error(x, e);
  compare_drivers([&] { return make_deletions_interactive_session(x, y, 2); }, x.values());
}

TEST_CASE("threaded and sequential drivers agree: one-way insertions") {
  Rng rng(33);
  const Permutation y(rng.permutation(30));
  const auto e = sample_error(ErrorModel::Deletions, 30, 3, rng);
  const PartialPermutation x = apply_error(y, e);
  compare_drivers([&] { return make_insertions_oneway_session(x, y, 3); }, x.values());
}

TEST_CASE("threaded and sequential drivers agree: block deletion") {
  Rng rng(34);
  for (int trial = 0; trial < 8; ++trial) {
    const Permutation x(rng.permutation(36));
    const auto e = sample_error(ErrorModel::BlockDeletions, 36, 4, rng);
    const PartialPermutation y = apply_error(x, e);
    compare_drivers([&] { return make_block_deletion_session(x, y, 4); }, x.values());
  }
}

TEST_CASE("threaded and sequential drivers agree: translocation") {
  Rng rng(35);
  for (int trial = 0; trial < 8; ++trial) {
    const Permutation x(rng.permutation(33));
    const auto e = std::get<Translocation>(sample_error(ErrorModel::Translocations, 33, 1, rng));
    const Permutation y = apply_translocation(x, e.from, e.to);
    compare_drivers([&] { return make_translocation_session(x, y); }, x.values());
  }

  // receiver-local resolution: the transmitter idles, the session must still
  // wind down cleanly on both drivers
  const Permutation x = Permutation::identity(9);
  const Permutation y = apply_translocation(x, 5, 1);
  compare_drivers([&] { return make_translocation_session(x, y); }, x.values());
}

TEST_CASE("threaded and sequential drivers agree: transposition") {
  Rng rng(36);
  const Permutation x(rng.permutation(16));
  const auto e = std::get<Transposition>(sample_error(ErrorModel::Transpositions, 16, 1, rng));
  const Permutation y = apply_transposition(x, e.a, e.b);
  compare_drivers([&] { return make_transposition_oneway_session(x, y); }, x.values());
}

#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "ranksync/channel.hpp"
#include "ranksync/errors.hpp"
#include "ranksync/permutation.hpp"
#include "ranksync/rng.hpp"

namespace ranksync {

// A protocol endpoint.  Parties communicate exclusively through Messages: a
// transmitter never sees the receiver's sequence and vice versa, so a session
// can be replayed from the message stream alone (and the two endpoints can run
// on separate threads with a queue between them).
class Party {
 public:
  virtual ~Party() = default;
  // Called once before any delivery; emits the party's unprompted opening.
  virtual void start(std::vector<Message>& /*out*/) {}
  virtual void on_message(const Message& m, std::vector<Message>& out) = 0;
  virtual bool done() const = 0;
};

// A transmitter/receiver pair wired to concrete inputs, plus an accessor for
// the receiver's final restored sequence.
struct SessionParties {
  std::unique_ptr<Party> transmitter;
  std::unique_ptr<Party> receiver;
  std::function<PartialPermutation()> result;
};

// Runs both endpoints to completion over an in-process FIFO, recording every
// message in order.  Throws if the session stalls or exceeds a sanity cap.
Transcript run_session(Party& transmitter, Party& receiver);

struct SyncOutcome {
  PartialPermutation restored;
  Transcript transcript;
  bool success = false;  // restored equals the transmitter's reference
};

// --- Deletion family -------------------------------------------------------

// Receiver opens with the missing-symbol subset; transmitter answers with the
// deleted position subset and the ordering of the deleted symbols.
SyncOutcome sync_deletions_interactive(const Permutation& x, const PartialPermutation& y, int d);
SessionParties make_deletions_interactive_session(const Permutation& x,
                                                  const PartialPermutation& y, int d);

// Anchor-driven recursive halving with one small feedback verdict per anchor;
// single-deletion substrings finish with a checksum + syndrome pair.
SyncOutcome sync_deletions_limited_feedback(const Permutation& x, const PartialPermutation& y,
                                            int d);
SessionParties make_deletions_limited_feedback_session(const Permutation& x,
                                                       const PartialPermutation& y, int d);

// One-way dual of the subset exchange: the transmitter holds the shorter
// sequence, the receiver deletes the announced symbols.
SyncOutcome sync_insertions_oneway(const PartialPermutation& x, const Permutation& y, int d);
SessionParties make_insertions_oneway_session(const PartialPermutation& x, const Permutation& y,
                                              int d);

// --- Block deletion --------------------------------------------------------

// Stride-d split; syndrome/checksum pairs for the outer subsequences, then a
// binary search over subsequence indices isolates the block boundary.
SyncOutcome sync_block_deletion(const Permutation& x, const PartialPermutation& y, int d);
SessionParties make_block_deletion_session(const Permutation& x, const PartialPermutation& y,
                                           int d);

// --- Single translocation --------------------------------------------------

// Instrumentation record for one anchor round.
struct TranslocationProbe {
  int round = 0;
  int substring_len = 0;
  int shift = 0;  // receiver-observed displacement of the anchor
};

SyncOutcome sync_translocation(const Permutation& x, const Permutation& y,
                               std::vector<TranslocationProbe>* trace = nullptr);
SessionParties make_translocation_session(const Permutation& x, const Permutation& y,
                                          std::vector<TranslocationProbe>* trace = nullptr);

// --- Single transposition --------------------------------------------------

// One-way: three weighted-moment aggregates determine the swapped pair by
// exact integer arithmetic.
SyncOutcome sync_transposition_oneway(const Permutation& x, const Permutation& y);
SessionParties make_transposition_oneway_session(const Permutation& x, const Permutation& y);

// Probe-until-hit baseline: symbols at uniformly random positions are checked
// one by one until one of the two swapped positions is probed.  Returns the
// number of probes.
int anchor_transposition_rounds(const Permutation& x, const Transposition& tau, Rng& rng);

}  // namespace ranksync

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ranksync/bounds.hpp"
#include "ranksync/protocols.hpp"

namespace ranksync {

enum class Protocol {
  P1,             // interactive deletions, subset + ordering exchange
  P2,             // limited-feedback deletions
  Insertions,     // one-way insertions
  Block,          // block deletion
  Translocation,  // single translocation
  Transposition,  // one-way single transposition
  AnchorBaseline, // probe-until-hit transposition baseline
};

enum class Accounting { Ideal, Wire, Both };
enum class ReportFormat { Csv, Json };

const char* to_string(Protocol p);
const char* to_string(Accounting a);
const char* to_string(ReportFormat f);
std::optional<Protocol> protocol_from_string(const std::string& name);

struct ExperimentConfig {
  Protocol protocol = Protocol::P1;
  int n = 0;
  int d = 0;  // ignored by the translocation/transposition/baseline models
  long long trials = 0;
  uint64_t seed = 1;
  Accounting accounting = Accounting::Both;
  ReportFormat format = ReportFormat::Json;
  std::string out_path;   // empty: stdout
  std::string dump_path;  // empty: no transcript dump
};

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // population variance
};

struct ChannelStats {
  Moments wire;
  Moments wire_comparable;  // deviation-flagged messages excluded
  Moments ideal;
  Moments ideal_comparable;
};

struct ExperimentStats {
  ExperimentConfig config;
  ChannelStats forward;
  ChannelStats feedback;
  Moments rounds;         // receiver-initiated alternations per trial
  Moments anchor_rounds;  // anchor-driven rounds per trial (0 when unused)
  double round1_fraction = 0.0;
  Moments deviation_forward_wire, deviation_forward_ideal;
  Moments deviation_feedback_wire, deviation_feedback_ideal;
  double success_rate = 0.0;
  // Closed-form references for this configuration, in report order.
  std::vector<std::pair<std::string, double>> theoretical;
};

// Runs cfg.trials independent trials, each on its own (seed, trial) stream.
// Aggregation is sequential in trial order, so results are reproducible
// bit-for-bit.  Any unsuccessful trial aborts with a reproduction bundle in
// the exception text.
ExperimentStats run_experiment(const ExperimentConfig& cfg);

// Samples one instance of the model and runs the matching protocol
// (AnchorBaseline is handled only by run_experiment).
SyncOutcome run_protocol_once(Protocol p, int n, int d, Rng& rng);

std::string to_json(const ExperimentStats& s);
std::string to_csv(const ExperimentStats& s);

// --- Small-n verification suites -------------------------------------------

struct SuiteCheck {
  std::string property;
  bool pass = false;
  std::string detail;  // first counterexample, or a short summary
};

// Suites: exactness_all, coset_partition, translocation_detection,
// unique_reinsertion, deletion_inversion, block_shape, roundtrip, all.
// Exhaustive up to n = 6 where a suite enumerates S_n; n in {7, 8} switch to
// 500 sampled permutations.  Failures are returned as data, not thrown.
std::vector<SuiteCheck> verify_small_n(const std::string& suite, int n_max);
bool all_passed(const std::vector<SuiteCheck>& checks);

}  // namespace ranksync

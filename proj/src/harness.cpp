#include "ranksync/harness.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ranksync/error.hpp"

namespace ranksync {

const char* to_string(Protocol p) {
  switch (p) {
    case Protocol::P1: return "p1";
    case Protocol::P2: return "p2";
    case Protocol::Insertions: return "insertions";
    case Protocol::Block: return "block";
    case Protocol::Translocation: return "translocation";
    case Protocol::Transposition: return "transposition";
    case Protocol::AnchorBaseline: return "anchor-baseline";
  }
  return "?";
}

const char* to_string(Accounting a) {
  switch (a) {
    case Accounting::Ideal: return "ideal";
    case Accounting::Wire: return "wire";
    case Accounting::Both: return "both";
  }
  return "?";
}

const char* to_string(ReportFormat f) { return f == ReportFormat::Csv ? "csv" : "json"; }

std::optional<Protocol> protocol_from_string(const std::string& name) {
  for (Protocol p : {Protocol::P1, Protocol::P2, Protocol::Insertions, Protocol::Block,
                     Protocol::Translocation, Protocol::Transposition, Protocol::AnchorBaseline}) {
    if (name == to_string(p)) return p;
  }
  return std::nullopt;
}

namespace {

ErrorModel model_for(Protocol p) {
  switch (p) {
    case Protocol::Block: return ErrorModel::BlockDeletions;
    case Protocol::Translocation: return ErrorModel::Translocations;
    case Protocol::Transposition:
    case Protocol::AnchorBaseline: return ErrorModel::Transpositions;
    default: return ErrorModel::Deletions;
  }
}

// Sums and squared sums in trial order; population variance.  The subtraction
// form is fine here because every metric is a count of the same magnitude as
// its mean.
struct Acc {
  double sum = 0.0;
  double sumsq = 0.0;
  long long count = 0;

  void add(double v) {
    sum += v;
    sumsq += v * v;
    ++count;
  }

  Moments moments() const {
    if (count == 0) return {};
    const double mean = sum / static_cast<double>(count);
    double var = sumsq / static_cast<double>(count) - mean * mean;
    if (var < 0.0) var = 0.0;
    return {mean, var};
  }
};

struct ChannelAcc {
  Acc wire, wire_comparable, ideal, ideal_comparable;

  void add(const DirectionTotals& t) {
    wire.add(static_cast<double>(t.wire));
    wire_comparable.add(static_cast<double>(t.wire_comparable));
    ideal.add(t.ideal);
    ideal_comparable.add(t.ideal_comparable);
  }

  ChannelStats stats() const {
    return {wire.moments(), wire_comparable.moments(), ideal.moments(),
            ideal_comparable.moments()};
  }
};

void push_bound(std::vector<std::pair<std::string, double>>& out, BoundKind k, int n, int d) {
  const BoundValue v = bound(k, n, d);
  out.emplace_back(to_string(k), v.mean);
  if (v.variance) out.emplace_back(std::string(to_string(k)) + "_variance", *v.variance);
}

std::vector<std::pair<std::string, double>> reference_values(const ExperimentConfig& cfg) {
  std::vector<std::pair<std::string, double>> out;
  switch (cfg.protocol) {
    case Protocol::P1:
      push_bound(out, BoundKind::GenieDeletions, cfg.n, cfg.d);
      break;
    case Protocol::P2:
      push_bound(out, BoundKind::GenieDeletions, cfg.n, cfg.d);
      push_bound(out, BoundKind::DeletionsForwardExpectation, cfg.n, cfg.d);
      push_bound(out, BoundKind::DeletionsFeedbackCap, cfg.n, cfg.d);
      break;
    case Protocol::Insertions:
      // Naming the d surplus symbols is the same counting problem as the
      // deletion genie minus its ordering term.
      out.emplace_back("genie_insertions", log2_binomial(cfg.n, cfg.d));
      break;
    case Protocol::Block:
      push_bound(out, BoundKind::GenieBlock, cfg.n, cfg.d);
      push_bound(out, BoundKind::BlockForwardExpectation, cfg.n, cfg.d);
      push_bound(out, BoundKind::BlockFeedbackExpectation, cfg.n, cfg.d);
      out.emplace_back("block_forward_branch_mix", block_forward_branch_mix(cfg.n, cfg.d));
      break;
    case Protocol::Translocation:
      push_bound(out, BoundKind::GenieTranslocation, cfg.n, cfg.d);
      push_bound(out, BoundKind::MoveForwardExpectation, cfg.n, cfg.d);
      push_bound(out, BoundKind::MoveFeedbackExpectation, cfg.n, cfg.d);
      push_bound(out, BoundKind::MoveRound1Probability, cfg.n, cfg.d);
      break;
    case Protocol::Transposition:
      push_bound(out, BoundKind::GenieTransposition, cfg.n, cfg.d);
      break;
    case Protocol::AnchorBaseline:
      push_bound(out, BoundKind::AnchorTranspositionRounds, cfg.n, cfg.d);
      break;
  }
  return out;
}

// Replays the trial's sampling prefix so the failure report carries the exact
// inputs, not just the coordinates to regenerate them.
std::string reproduction_bundle(const ExperimentConfig& cfg, long long trial) {
  Rng replay = Rng::for_trial(cfg.seed, static_cast<uint64_t>(trial));
  const Permutation sigma(replay.permutation(cfg.n));
  const ErrorPattern e = sample_error(model_for(cfg.protocol), cfg.n, cfg.d, replay);
  std::ostringstream os;
  os << "trial failed {protocol=" << to_string(cfg.protocol) << " n=" << cfg.n << " d=" << cfg.d
     << " seed=" << cfg.seed << " trial=" << trial << " x=" << sigma.str()
     << " error=" << describe(e) << "}";
  return os.str();
}

}  // namespace

SyncOutcome run_protocol_once(Protocol p, int n, int d, Rng& rng) {
  const Permutation sigma(rng.permutation(n));
  const ErrorPattern e = sample_error(model_for(p), n, d, rng);
  const PartialPermutation corrupted = apply_error(sigma, e);
  switch (p) {
    case Protocol::P1: return sync_deletions_interactive(sigma, corrupted, d);
    case Protocol::P2: return sync_deletions_limited_feedback(sigma, corrupted, d);
    case Protocol::Insertions:
      // Dual picture: the transmitter holds the short sequence, the receiver's
      // copy carries d surplus symbols.
      return sync_insertions_oneway(corrupted, sigma, d);
    case Protocol::Block: return sync_block_deletion(sigma, corrupted, d);
    case Protocol::Translocation:
      return sync_translocation(sigma, Permutation(corrupted.values()));
    case Protocol::Transposition:
      return sync_transposition_oneway(sigma, Permutation(corrupted.values()));
    case Protocol::AnchorBaseline: break;
  }
  throw std::invalid_argument("run_protocol_once: the probing baseline is not a session protocol");
}

ExperimentStats run_experiment(const ExperimentConfig& cfg) {
  const int n = cfg.n;
  const int d = cfg.d;
  if (n < 1) throw std::invalid_argument("run_experiment: n must be positive");
  if (cfg.trials < 1) throw std::invalid_argument("run_experiment: trials must be positive");
  const bool deletion_family = cfg.protocol == Protocol::P1 || cfg.protocol == Protocol::P2 ||
                               cfg.protocol == Protocol::Insertions ||
                               cfg.protocol == Protocol::Block;
  if (deletion_family) {
    if (d < 1 || d > n) throw std::invalid_argument("run_experiment: need 1 <= d <= n");
    if (4 * d > n) {
      std::cerr << "warning: d=" << d << " against n=" << n
                << " is outside the sparse regime the reference curves assume\n";
    }
  } else if (n < 2) {
    throw std::invalid_argument("run_experiment: this model needs n >= 2");
  }

  ExperimentStats st;
  st.config = cfg;
  st.theoretical = reference_values(cfg);

  ChannelAcc forward, feedback;
  Acc rounds, anchors;
  Acc dev_fw, dev_fi, dev_bw, dev_bi;
  long long round1 = 0;
  long long successes = 0;

  std::ofstream dump;
  if (!cfg.dump_path.empty()) {
    dump.open(cfg.dump_path);
    if (!dump) throw std::runtime_error("run_experiment: cannot open " + cfg.dump_path);
  }

  for (long long trial = 0; trial < cfg.trials; ++trial) {
    Rng rng = Rng::for_trial(cfg.seed, static_cast<uint64_t>(trial));

    if (cfg.protocol == Protocol::AnchorBaseline) {
      const Permutation sigma(rng.permutation(n));
      const ErrorPattern e = sample_error(ErrorModel::Transpositions, n, d, rng);
      const int probes = anchor_transposition_rounds(sigma, std::get<Transposition>(e), rng);
      rounds.add(probes);
      anchors.add(probes);
      if (probes == 1) ++round1;
      forward.add({});
      feedback.add({});
      dev_fw.add(0.0);
      dev_fi.add(0.0);
      dev_bw.add(0.0);
      dev_bi.add(0.0);
      ++successes;
      continue;
    }

    SyncOutcome out;
    try {
      out = run_protocol_once(cfg.protocol, n, d, rng);
    } catch (const std::exception& ex) {
      throw std::runtime_error(reproduction_bundle(cfg, trial) + " raised: " + ex.what());
    }
    if (!out.success) {
      throw std::runtime_error(reproduction_bundle(cfg, trial) + ": restored sequence mismatch");
    }

    const TranscriptTotals& t = out.transcript.totals();
    forward.add(t.forward);
    feedback.add(t.feedback);
    rounds.add(static_cast<double>(t.rounds));
    const int anchor_count = out.transcript.count_kind(MessageKind::Anchor) +
                             (cfg.protocol == Protocol::Translocation
                                  ? out.transcript.count_kind(MessageKind::RawSubstring)
                                  : 0);
    anchors.add(static_cast<double>(anchor_count));
    if (anchor_count == 1) ++round1;
    dev_fw.add(static_cast<double>(t.forward.wire - t.forward.wire_comparable));
    dev_fi.add(t.forward.ideal - t.forward.ideal_comparable);
    dev_bw.add(static_cast<double>(t.feedback.wire - t.feedback.wire_comparable));
    dev_bi.add(t.feedback.ideal - t.feedback.ideal_comparable);
    ++successes;

    if (dump.is_open()) {
      dump << "# trial " << trial << "\n";
      out.transcript.dump(dump);
    }
  }

  st.forward = forward.stats();
  st.feedback = feedback.stats();
  st.rounds = rounds.moments();
  st.anchor_rounds = anchors.moments();
  st.round1_fraction = static_cast<double>(round1) / static_cast<double>(cfg.trials);
  st.deviation_forward_wire = dev_fw.moments();
  st.deviation_forward_ideal = dev_fi.moments();
  st.deviation_feedback_wire = dev_bw.moments();
  st.deviation_feedback_ideal = dev_bi.moments();
  st.success_rate = static_cast<double>(successes) / static_cast<double>(cfg.trials);
  return st;
}

std::string to_json(const ExperimentStats& s) {
  using json = nlohmann::ordered_json;
  const bool wire = s.config.accounting != Accounting::Ideal;
  const bool ideal = s.config.accounting != Accounting::Wire;

  auto moments = [](const Moments& m) {
    return json{{"mean", m.mean}, {"variance", m.variance}};
  };
  auto channel = [&](const ChannelStats& c) {
    json j = json::object();
    if (wire) {
      j["wire"] = moments(c.wire);
      j["wire_comparable"] = moments(c.wire_comparable);
    }
    if (ideal) {
      j["ideal"] = moments(c.ideal);
      j["ideal_comparable"] = moments(c.ideal_comparable);
    }
    return j;
  };

  json j;
  j["config"] = {
      {"protocol", to_string(s.config.protocol)},
      {"n", s.config.n},
      {"d", s.config.d},
      {"trials", s.config.trials},
      {"seed", s.config.seed},
      {"accounting", to_string(s.config.accounting)},
  };
  j["measured"] = {
      {"forward", channel(s.forward)},
      {"feedback", channel(s.feedback)},
      {"rounds", moments(s.rounds)},
      {"anchor_rounds", moments(s.anchor_rounds)},
      {"round1_fraction", s.round1_fraction},
      {"success_rate", s.success_rate},
  };
  json dev = json::object();
  if (wire) {
    dev["forward_wire"] = moments(s.deviation_forward_wire);
    dev["feedback_wire"] = moments(s.deviation_feedback_wire);
  }
  if (ideal) {
    dev["forward_ideal"] = moments(s.deviation_forward_ideal);
    dev["feedback_ideal"] = moments(s.deviation_feedback_ideal);
  }
  j["deviations"] = dev;
  json th = json::object();
  for (const auto& [name, value] : s.theoretical) th[name] = value;
  j["theoretical"] = th;
  return j.dump(2) + "\n";
}

std::string to_csv(const ExperimentStats& s) {
  const bool wire = s.config.accounting != Accounting::Ideal;
  const bool ideal = s.config.accounting != Accounting::Wire;

  std::ostringstream os;
  os.precision(17);
  os << "# protocol=" << to_string(s.config.protocol) << " n=" << s.config.n
     << " d=" << s.config.d << " trials=" << s.config.trials << " seed=" << s.config.seed
     << " accounting=" << to_string(s.config.accounting) << "\n";
  os << "metric,direction,mean,variance\n";
  auto row = [&os](const std::string& metric, const std::string& dir, double mean, double var) {
    os << metric << ',' << dir << ',' << mean << ',' << var << '\n';
  };
  auto chan = [&](const char* dir, const ChannelStats& c) {
    if (wire) {
      row("wire", dir, c.wire.mean, c.wire.variance);
      row("wire_comparable", dir, c.wire_comparable.mean, c.wire_comparable.variance);
    }
    if (ideal) {
      row("ideal", dir, c.ideal.mean, c.ideal.variance);
      row("ideal_comparable", dir, c.ideal_comparable.mean, c.ideal_comparable.variance);
    }
  };
  chan("forward", s.forward);
  chan("feedback", s.feedback);
  row("rounds", "none", s.rounds.mean, s.rounds.variance);
  row("anchor_rounds", "none", s.anchor_rounds.mean, s.anchor_rounds.variance);
  row("round1_fraction", "none", s.round1_fraction, 0.0);
  row("success_rate", "none", s.success_rate, 0.0);
  if (wire) {
    row("deviation_wire", "forward", s.deviation_forward_wire.mean,
        s.deviation_forward_wire.variance);
    row("deviation_wire", "feedback", s.deviation_feedback_wire.mean,
        s.deviation_feedback_wire.variance);
  }
  if (ideal) {
    row("deviation_ideal", "forward", s.deviation_forward_ideal.mean,
        s.deviation_forward_ideal.variance);
    row("deviation_ideal", "feedback", s.deviation_feedback_ideal.mean,
        s.deviation_feedback_ideal.variance);
  }
  for (const auto& [name, value] : s.theoretical) row(name, "reference", value, 0.0);
  return os.str();
}

}  // namespace ranksync

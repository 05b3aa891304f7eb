#include "ranksync/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "ranksync/codec.hpp"

namespace ranksync {

namespace {

double lg(double v) { return std::log2(v); }

void need_n(int n, int at_least) {
  if (n < at_least) throw std::invalid_argument("n too small for this reference");
}

void need_d(int d) {
  if (d < 1) throw std::invalid_argument("this reference needs d >= 1");
}

}  // namespace

BoundValue bound(BoundKind kind, int n, int d) {
  switch (kind) {
    case BoundKind::GenieDeletions:
      need_n(n, 1);
      need_d(d);
      return {log2_binomial(n, d) + log2_factorial(d), std::nullopt};
    case BoundKind::GenieBlock:
      need_n(n, 1);
      need_d(d);
      return {lg(static_cast<double>(n - d + 1)) + log2_factorial(d), std::nullopt};
    case BoundKind::GenieTranslocation:
      need_n(n, 2);
      return {2.0 * lg(n - 1.0), std::nullopt};
    case BoundKind::GenieTransposition:
      need_n(n, 2);
      return {log2_binomial(n, 2), std::nullopt};
    case BoundKind::DeletionsForwardExpectation:
      need_n(n, 2);
      need_d(d);
      return {(5.0 * d - 2.0) * lg(n) - 2.0 * d * lg(static_cast<double>(d)) - d, std::nullopt};
    case BoundKind::DeletionsFeedbackCap:
      need_d(d);
      return {6.0 * (d - 1.0), std::nullopt};
    case BoundKind::BlockForwardExpectation: {
      need_n(n, 2);
      need_d(d);
      const double ld = lg(static_cast<double>(d)), ln = lg(n);
      const double mean = 3.0 * ld * ln + 6.0 * ln + log2_factorial(d) - 2.0 * ld / d;
      const double variance = 9.0 * (d - 1.0) / (static_cast<double>(d) * d) * ld * ld * ln * ln;
      return {mean, variance};
    }
    case BoundKind::BlockFeedbackExpectation: {
      need_d(d);
      const double ld = lg(static_cast<double>(d));
      return {(2.0 * d - 1.0) / d * ld, (d - 1.0) / (static_cast<double>(d) * d) * ld * ld};
    }
    case BoundKind::MoveForwardExpectation: {
      need_n(n, 2);
      const double ln = lg(n);
      return {6.0 * ln, 8.0 * ln * ln};
    }
    case BoundKind::MoveFeedbackExpectation:
      return {6.0, 18.0};
    case BoundKind::AnchorTranspositionRounds:
      need_n(n, 2);
      return {(n + 1.0) / 3.0, std::nullopt};
    case BoundKind::MoveRound1Probability: {
      need_n(n, 4);
      const double m = n - 1.0;
      if (n % 2 == 1) return {0.5 + 2.0 / m - 2.0 / (m * m), std::nullopt};
      return {0.5 + 2.0 / m - 2.5 / (m * m), std::nullopt};
    }
  }
  throw std::logic_error("unhandled reference kind");
}

double block_forward_branch_mix(int n, int d) {
  if (n < 2 || d < 1) throw std::invalid_argument("branch mix needs n >= 2, d >= 1");
  const double ld = lg(static_cast<double>(d)), ln = lg(n), lfac = log2_factorial(d);
  const double direct = 6.0 * (ln + lfac);
  const double searched = 6.0 * ln + 3.0 * ld * ln + lfac;
  return direct / d + searched * (d - 1.0) / d;
}

const char* to_string(BoundKind k) {
  switch (k) {
    case BoundKind::GenieDeletions: return "genie_deletions";
    case BoundKind::GenieBlock: return "genie_block";
    case BoundKind::GenieTranslocation: return "genie_translocation";
    case BoundKind::GenieTransposition: return "genie_transposition";
    case BoundKind::DeletionsForwardExpectation: return "deletions_forward_expectation";
    case BoundKind::DeletionsFeedbackCap: return "deletions_feedback_cap";
    case BoundKind::BlockForwardExpectation: return "block_forward_expectation";
    case BoundKind::BlockFeedbackExpectation: return "block_feedback_expectation";
    case BoundKind::MoveForwardExpectation: return "move_forward_expectation";
    case BoundKind::MoveFeedbackExpectation: return "move_feedback_expectation";
    case BoundKind::AnchorTranspositionRounds: return "probe_rounds_expectation";
    case BoundKind::MoveRound1Probability: return "move_round1_probability";
  }
  return "?";
}

std::optional<BoundKind> bound_kind_from_string(const std::string& name) {
  for (BoundKind k :
       {BoundKind::GenieDeletions, BoundKind::GenieBlock, BoundKind::GenieTranslocation,
        BoundKind::GenieTransposition, BoundKind::DeletionsForwardExpectation, BoundKind::DeletionsFeedbackCap,
        BoundKind::BlockForwardExpectation, BoundKind::BlockFeedbackExpectation, BoundKind::MoveForwardExpectation,
        BoundKind::MoveFeedbackExpectation, BoundKind::AnchorTranspositionRounds, BoundKind::MoveRound1Probability})
    if (name == to_string(k)) return k;
  return std::nullopt;
}

}  // namespace ranksync

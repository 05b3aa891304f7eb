#pragma once

#include <optional>
#include <string>

namespace ranksync {

// Closed-form reference quantities the measured transcripts are compared
// against: genie-aided one-way costs and the interactive protocols' expected
// message totals (with variances where the closed form defines one).
enum class BoundKind {
  GenieDeletions,
  GenieBlock,
  GenieTranslocation,
  GenieTransposition,
  DeletionsForwardExpectation,
  DeletionsFeedbackCap,
  BlockForwardExpectation,
  BlockFeedbackExpectation,
  MoveForwardExpectation,
  MoveFeedbackExpectation,
  AnchorTranspositionRounds,
  MoveRound1Probability,
};

struct BoundValue {
  double mean = 0.0;
  std::optional<double> variance;
};

// d is ignored by kinds that do not depend on it.
BoundValue bound(BoundKind kind, int n, int d = 0);

// Alternate reading of the block-deletion forward expectation whose
// derivation mixes the two branch costs differently; reported alongside
// BlockForwardExpectation for comparison.
double block_forward_branch_mix(int n, int d);

const char* to_string(BoundKind k);
std::optional<BoundKind> bound_kind_from_string(const std::string& name);

}  // namespace ranksync

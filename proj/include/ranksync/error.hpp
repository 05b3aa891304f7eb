#pragma once

#include <stdexcept>
#include <string>

namespace ranksync {

// Decoding reached an impossible state for honestly-generated inputs: either
// the inputs were corrupted or there is a protocol bug.  Never swallowed.
struct DecodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A party observed data that breaks the promised relationship between the two
// sequences (e.g. "one deletion" inputs that are not one deletion apart).
struct ContractViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ranksync

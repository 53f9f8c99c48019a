#pragma once

#include <stdexcept>
#include <string>

namespace rht {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-contract user input.
struct InputError : Error {
  using Error::Error;
};

// Operands belong to different presentations.
struct PresentationMismatch : Error {
  using Error::Error;
};

// The quotient construction produced a contradictory relation. Signals a bug
// or an input outside the supported families, never an expected outcome.
struct ModelInconsistency : Error {
  using Error::Error;
};

// Input shape the engine does not handle (e.g. a Z-part with no finite
// replacement in the supported list).
struct UnsupportedInput : Error {
  using Error::Error;
};

}  // namespace rht

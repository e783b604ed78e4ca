#pragma once

#include <stdexcept>
#include <string>

namespace braidwalk {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : Error {
  using Error::Error;
};

// Fixed-point iteration failed to reach tolerance within the iteration cap.
struct NonConvergence : Error {
  using Error::Error;
};

struct RootSelectionError : Error {
  using Error::Error;
};

// An index expression that must land in the eight-letter alphabet did not.
struct StructureError : Error {
  using Error::Error;
};

struct TransienceViolation : Error {
  using Error::Error;
};

struct ChainError : Error {
  using Error::Error;
};

struct PositivityError : Error {
  using Error::Error;
};

struct NotStabilized : Error {
  using Error::Error;
};

struct DepthExceeded : Error {
  using Error::Error;
};

struct BallTooLarge : Error {
  using Error::Error;
};

}  // namespace braidwalk

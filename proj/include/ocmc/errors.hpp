#pragma once

#include <stdexcept>
#include <string>

namespace ocmc {

// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed textual input (OCP files, formulas, QBF, NFA descriptions).
// Carries a 1-based line number when one is known (0 otherwise).
struct ParseError : Error {
  ParseError(std::string msg, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + msg : msg),
        line(line) {}
  std::size_t line;
};

// Structurally valid input that violates an operation's precondition
// (unknown location, out-of-range index, reserved proposition, ...).
struct InputError : Error {
  using Error::Error;
};

// The requested engine cannot handle this system (e.g. quotient engine on
// a non-unit-step OCP). CLI maps this to its own exit code.
struct UnsupportedInputError : Error {
  using Error::Error;
};

// The truncation oracle stayed Unknown up to the maximum ceiling.
struct IndefiniteError : Error {
  using Error::Error;
};

// An API contract was broken by the caller (e.g. a measure applied to a
// sugared formula). Distinct from InputError: this is a programming error.
struct ContractViolation : Error {
  using Error::Error;
};

}  // namespace ocmc

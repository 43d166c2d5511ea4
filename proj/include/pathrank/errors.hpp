#pragma once

#include <stdexcept>
#include <string>

namespace pathrank {

// Base class for everything thrown by this library on bad input or
// exhausted resource budgets.  std::logic_error is reserved for internal
// invariant violations (bugs), never for user input.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed external input: JSON graph documents, Markov CSV files.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Structurally valid input that violates a documented precondition
// (non-positive weight, unknown vertex, row sum out of range, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Query (v1, v2) admits no path at all.
class NoPathError : public Error {
 public:
  using Error::Error;
};

// A configurable resource budget was exceeded: variant enumeration,
// enumeration frontier, or expanded-graph size.  Results produced
// before the throw remain valid.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

// An iterative numeric routine hit its iteration cap before reaching
// its convergence target.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace pathrank

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace lsqprice {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value violated one of its documented invariants. `invariant()` names the
/// rule that failed so callers (the CLI in particular) can report it verbatim.
class InvariantError : public Error {
 public:
  InvariantError(std::string invariant, const std::string& detail)
      : Error(invariant + ": " + detail), invariant_(std::move(invariant)) {}

  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

/// A set of games does not form (or cannot be reduced to) a cone basis.
class BasisError : public Error {
 public:
  using Error::Error;
};

/// A numerical solver failed to converge or hit an iteration cap.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace lsqprice

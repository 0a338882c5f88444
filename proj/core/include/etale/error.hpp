#pragma once

#include <stdexcept>
#include <string>

namespace etale {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller passed something outside an operation's precondition
/// (mixed spaces, point outside a domain, non-clopen restriction, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent scenario input. Maps to CLI exit code 1.
class ScenarioError : public Error {
 public:
  using Error::Error;
};

/// A structural axiom failed. `axiom` is a stable identifier such as
/// "associativity" or "agreement"; `where` names the offending elements.
class AxiomViolation : public ScenarioError {
 public:
  AxiomViolation(std::string axiom, std::string where)
      : ScenarioError(axiom + ": " + where), axiom_(std::move(axiom)),
        where_(std::move(where)) {}

  const std::string& axiom() const noexcept { return axiom_; }
  const std::string& where() const noexcept { return where_; }

 private:
  std::string axiom_;
  std::string where_;
};

/// Two independently computed answers disagreed. Always a bug; exit code 2.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// A search or closure hit its cap before stabilising. Exit code 3.
class BoundExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace etale

#pragma once

#include <stdexcept>
#include <string>

#include "purefield/integer.hpp"

namespace purefield {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller passed a value outside an operation's domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// x^n - a is reducible over Q.
class ReducibleError : public Error {
 public:
  using Error::Error;
};

/// Some prime p | n has p | v_p(a); the closed forms do not apply.
class HypothesisViolation : public Error {
 public:
  HypothesisViolation(Integer prime, const std::string& what)
      : Error(what), prime_(std::move(prime)) {}
  const Integer& prime() const noexcept { return prime_; }

 private:
  Integer prime_;
};

/// A residual polynomial is not separable, so the lattice count is not
/// the index valuation.
class OreRegularityFailure : public Error {
 public:
  OreRegularityFailure(Integer prime, const std::string& what)
      : Error(what), prime_(std::move(prime)) {}
  const Integer& prime() const noexcept { return prime_; }

 private:
  Integer prime_;
};

/// An invariant that validation should have guaranteed was broken.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace purefield

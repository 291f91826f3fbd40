#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace catkit {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Measure or vector construction saw no positive weight.
class EmptySupport : public Error {
public:
  explicit EmptySupport(const std::string& what) : Error(what) {}
};

/// Weights do not sum to 1 and renormalization was not requested.
class NotNormalized : public Error {
public:
  explicit NotNormalized(const std::string& what) : Error(what) {}
};

/// An intermediate object exceeded the configured atom/entry cap.
class SizeLimit : public Error {
public:
  explicit SizeLimit(const std::string& what) : Error(what) {}
};

/// An operation's stated precondition does not hold for the inputs.
class PreconditionFailed : public Error {
public:
  explicit PreconditionFailed(const std::string& what) : Error(what) {}
};

/// Mixture coefficients are invalid (negative or not summing to 1).
class BadCoefficients : public Error {
public:
  explicit BadCoefficients(const std::string& what) : Error(what) {}
};

/// A bounded witness search ended without finding a witness.
/// Carries the diagnostic report accumulated before giving up.
class WitnessNotFound : public Error {
public:
  explicit WitnessNotFound(const std::string& what) : Error(what) {}
};

/// Input text could not be parsed (rational syntax, JSON shape, CLI grid).
class ParseError : public Error {
public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

/// Default cap on atom/entry counts of intermediate objects.
inline constexpr std::size_t kDefaultAtomCap = 2'000'000;

}  // namespace catkit

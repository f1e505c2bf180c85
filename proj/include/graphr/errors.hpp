#pragma once

#include <stdexcept>
#include <string>

namespace graphr {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A size, level or density argument lies outside the accepted range.
class RangeError : public Error {
public:
  using Error::Error;
};

/// An exact solver was asked for an instance larger than it supports.
class SizeLimitError : public Error {
public:
  using Error::Error;
};

/// A caller broke a documented precondition (task mismatch, infeasible input, ...).
class ContractViolation : public Error {
public:
  using Error::Error;
};

/// De-duplication could not reach the requested count within the retry budget.
class GenerationExhausted : public Error {
public:
  using Error::Error;
};

/// A verified answer beat the oracle optimum. Only an oracle or objective bug can cause this.
class OracleBugError : public Error {
public:
  using Error::Error;
};

/// Malformed record or JSON input.
class InputError : public Error {
public:
  using Error::Error;
};

}  // namespace graphr

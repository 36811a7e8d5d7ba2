#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cyclespec {

// Root of the error hierarchy. Each subclass maps to one CLI exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition of an operation was violated by the caller.
class ContractError : public Error {
 public:
  using Error::Error;
};

// Invalid generator or command configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Input exceeds a size limit (dense limit, brute-force oracle limit).
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Random construction could not satisfy its constraints within the retry budget.
class GenerationError : public Error {
 public:
  using Error::Error;
};

// Malformed edge-list or config file. line() is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A node index outside [0, N).
class RangeError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Eigensolver did not converge or a spectral invariant failed.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, std::size_t unconverged = 0)
      : Error(what), unconverged_(unconverged) {}
  // Size of the trailing submatrix whose eigenvalues did not converge.
  std::size_t unconverged_size() const noexcept { return unconverged_; }

 private:
  std::size_t unconverged_;
};

// tau-ellipse parameters could not be recovered from the anchor points.
class FitError : public Error {
 public:
  using Error::Error;
};

}  // namespace cyclespec

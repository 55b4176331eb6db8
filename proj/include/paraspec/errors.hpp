#pragma once

#include <stdexcept>
#include <string>

namespace paraspec {

// Base of every library error. The CLI maps the concrete type to an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input (exit code 2).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class RangeError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// Resource exhaustion (exit code 3).
class ResourceExhausted : public Error {
 public:
  using Error::Error;
};

class PrecisionExhausted : public ResourceExhausted {
 public:
  using ResourceExhausted::ResourceExhausted;
};

class SamplingExhausted : public ResourceExhausted {
 public:
  using ResourceExhausted::ResourceExhausted;
};

// A computation whose consistency check failed (zeta fit, Prym division, ...).
class ComputationFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace paraspec

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace stripconf {

/// Base class for every error raised by the library.
class StripError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or semantically invalid input (bad syntax, unknown label, ...).
class InvalidInput : public StripError {
 public:
  using StripError::StripError;
};

/// A request exceeding the configured cell cap.
class ResourceRefusal : public StripError {
 public:
  ResourceRefusal(const std::string& what, std::uint64_t estimate, std::uint64_t cap)
      : StripError(what), estimate_(estimate), cap_(cap) {}
  std::uint64_t estimate() const { return estimate_; }
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t estimate_;
  std::uint64_t cap_;
};

/// An internal consistency check failed.
class InvariantViolation : public StripError {
 public:
  using StripError::StripError;
};

}  // namespace stripconf

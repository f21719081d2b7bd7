#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sumset {

// Base of every failure the library reports. Each subclass maps onto one
// process exit code of the command-line tool.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller handed in something malformed (repeated set element, k < 2, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Exact count no longer fits in 64 bits.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Work or memory estimate exceeds the configured guard.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t required, std::uint64_t limit)
      : Error(what + ": requires " + std::to_string(required) + ", limit " +
              std::to_string(limit)),
        required_(required),
        limit_(limit) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t required_;
  std::uint64_t limit_;
};

// An internal consistency check failed (shard merge mismatch, deficit that
// disappears at a larger fold, ...). Never expected in a correct build.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace sumset

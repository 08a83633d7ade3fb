#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace speedup {

// Base of every error raised by the library. Callers that only care about
// "something was malformed" can catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonChromaticError : public Error { using Error::Error; };
class EmptyError : public Error { using Error::Error; };
class EmptyResultError : public Error { using Error::Error; };
class UnsupportedCombinationError : public Error { using Error::Error; };
class IdMismatchError : public Error { using Error::Error; };
class NotInTargetError : public Error { using Error::Error; };
class BadGridError : public Error { using Error::Error; };
class InputMismatchError : public Error { using Error::Error; };
class PartialMapError : public Error { using Error::Error; };
class NotASolutionError : public Error { using Error::Error; };
class MissingPeerValueError : public Error { using Error::Error; };
class PartialRuleError : public Error { using Error::Error; };
class ModelError : public Error { using Error::Error; };
class ParseError : public Error { using Error::Error; };

class ResourceLimitError : public Error {
 public:
  explicit ResourceLimitError(std::uint64_t budget)
      : Error("search budget of " + std::to_string(budget) + " nodes exceeded"),
        budget_(budget) {}
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t budget_;
};

}  // namespace speedup

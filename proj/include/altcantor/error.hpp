#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace altcantor {

enum class ErrorCode {
  ParseError,
  ElementTooSmall,
  DigitOutOfRange,
  OutOfDomain,
  ExactUnavailable,
  HorizonExceeded,
  UnsupportedBasis,
  NotWellDefined,
  InvalidSelection,
  CombinatorialLimit,
  GateFailed,
  DegenerateDenominator,
  InvalidArgument,
};

// Stable machine-readable name, used by the CLI in error lines.
std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by parsers; carries the byte offset of the offending character.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error(ErrorCode::ParseError, message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Raised by digit_shift when a shifted digit does not fit its new slot.
class NotWellDefinedError : public Error {
 public:
  explicit NotWellDefinedError(std::size_t position)
      : Error(ErrorCode::NotWellDefined,
              "digit shift not defined: digit " + std::to_string(position + 1) +
                  " exceeds d_" + std::to_string(position) + " - 1"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace altcantor

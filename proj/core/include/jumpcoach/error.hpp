#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace jumpcoach {

enum class ErrorCode {
  InvalidArgument,
  InsufficientDuration,
  ExcessiveMotion,
  TrackingDropout,
  InvalidCutoff,
  ParseError,
  SchemaViolation,
  CountMismatch,
  StreamGap,
  LevelNotFinished,
  MissingWaistData,
  MissingShinData,
  MissingHandData,
  InvalidAirtime,
  StreamExhausted,
  CalibrationMissing,
};

std::string_view toString(ErrorCode code);

/// Every failure raised by the engine carries a stable code so callers
/// (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(toString(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by line-oriented readers; `line` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace jumpcoach

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace borelcalc {

/// Failure categories reported by the library. The CLI maps each category
/// to an exit code, so new kinds must be added to `category()` as well.
enum class ErrorKind {
  // malformed input
  ParseError,
  UnknownFunction,
  BadFormat,
  // domain preconditions
  BadRange,
  OutsideDomain,
  ZeroOnContour,
  ZeroAtOrigin,
  AtomOnZero,
  NoAdmissibleRadius,
  CountMismatch,
  StripViolation,
  TailTooShort,
  TooFewZeros,
  // numerical failures
  NonConvergence,
  NonFinite,
  SeriesDivisionByZero,
  TruncationError,
  NoDecay,
  MaxDepth,
  SingularSystem,
  Overflow,
  CutoffTooLow,
};

enum class ErrorCategory { Input, Domain, Numerical };

constexpr ErrorCategory category(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::UnknownFunction:
    case ErrorKind::BadFormat:
      return ErrorCategory::Input;
    case ErrorKind::BadRange:
    case ErrorKind::OutsideDomain:
    case ErrorKind::ZeroOnContour:
    case ErrorKind::ZeroAtOrigin:
    case ErrorKind::AtomOnZero:
    case ErrorKind::NoAdmissibleRadius:
    case ErrorKind::CountMismatch:
    case ErrorKind::StripViolation:
    case ErrorKind::TailTooShort:
    case ErrorKind::TooFewZeros:
      return ErrorCategory::Domain;
    default:
      return ErrorCategory::Numerical;
  }
}

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failures carry the byte offset into the source text.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, std::size_t position, const std::string& what)
      : Error(kind, what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace borelcalc

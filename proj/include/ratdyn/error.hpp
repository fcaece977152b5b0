#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ratdyn {

enum class ErrorKind {
  DegenerateMap,
  IndeterminateValue,
  PoleDerivative,
  NotAFixedPoint,
  WrongTag,
  DeflationFailure,
  NotACycle,
  NotConverged,
  InsufficientSamples,
  DegenerateCloud,
  NotChaotic,
  EmptyPlot,
  IoError,
  ParseError,
  InvalidArgument,
};

constexpr std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateMap: return "DegenerateMap";
    case ErrorKind::IndeterminateValue: return "IndeterminateValue";
    case ErrorKind::PoleDerivative: return "PoleDerivative";
    case ErrorKind::NotAFixedPoint: return "NotAFixedPoint";
    case ErrorKind::WrongTag: return "WrongTag";
    case ErrorKind::DeflationFailure: return "DeflationFailure";
    case ErrorKind::NotACycle: return "NotACycle";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::DegenerateCloud: return "DegenerateCloud";
    case ErrorKind::NotChaotic: return "NotChaotic";
    case ErrorKind::EmptyPlot: return "EmptyPlot";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Domain error raised by every ratdyn module. The kind names the failed
/// contract; the CLI prints `error_name(kind())` on standard error.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace ratdyn

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fuzzy {

enum class ErrorKind {
  BadGrid,
  NonNested,
  EmptyCut,
  OutOfRange,
  GridMismatch,
  EmptyFamily,
  BadIndex,
  ParseError,
  NotMonotone,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::BadGrid: return "BadGrid";
    case ErrorKind::NonNested: return "NonNested";
    case ErrorKind::EmptyCut: return "EmptyCut";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::EmptyFamily: return "EmptyFamily";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotMonotone: return "NotMonotone";
  }
  return "Unknown";
}

/// Exception carrying a machine-readable kind alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace fuzzy

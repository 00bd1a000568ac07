#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace movekit {

enum class ErrorCode {
  DegenerateRay,
  DegenerateMap,
  InvalidNode,
  BadOrdinal,
  BadIndex,
  Duplicate,
  NegativeValue,
  AllZero,
  NotAPartition,
  BadFill,
  BadBounds,
  BadOrder,
  UnknownOwner,
  EmptyGroup,
  UnsupportedVersion,
  Parse,
  WrongKind,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateRay: return "degenerate-ray";
    case ErrorCode::DegenerateMap: return "degenerate-map";
    case ErrorCode::InvalidNode: return "invalid-node";
    case ErrorCode::BadOrdinal: return "bad-ordinal";
    case ErrorCode::BadIndex: return "bad-index";
    case ErrorCode::Duplicate: return "duplicate";
    case ErrorCode::NegativeValue: return "negative-value";
    case ErrorCode::AllZero: return "all-zero";
    case ErrorCode::NotAPartition: return "not-a-partition";
    case ErrorCode::BadFill: return "bad-fill";
    case ErrorCode::BadBounds: return "bad-bounds";
    case ErrorCode::BadOrder: return "bad-order";
    case ErrorCode::UnknownOwner: return "unknown-owner";
    case ErrorCode::EmptyGroup: return "empty-group";
    case ErrorCode::UnsupportedVersion: return "unsupported-version";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::WrongKind: return "wrong-kind";
  }
  return "unknown";
}

/// Exception carrying a machine-checkable error kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace movekit

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dismed {

enum class Errc {
  ParseError,
  UnknownField,
  ValidationError,
  DivisionByZeroInterval,
  IndeterminateIntegrand,
  MissingCapitalResponse,
  InvalidArgument,
  RejectionLimit,
  IndeterminateAtBase,
  IoError,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::ParseError: return "ParseError";
    case Errc::UnknownField: return "UnknownField";
    case Errc::ValidationError: return "ValidationError";
    case Errc::DivisionByZeroInterval: return "DivisionByZeroInterval";
    case Errc::IndeterminateIntegrand: return "IndeterminateIntegrand";
    case Errc::MissingCapitalResponse: return "MissingCapitalResponse";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::RejectionLimit: return "RejectionLimit";
    case Errc::IndeterminateAtBase: return "IndeterminateAtBase";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace dismed

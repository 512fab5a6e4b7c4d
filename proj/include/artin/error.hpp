#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace artin {

/// Failure categories. Verdicts that are expected outcomes of an experiment
/// (NoRoot, Incompatible) are returned as values and never thrown.
enum class Errc {
  NotAUnit,
  ArityMismatch,
  PrecisionExhausted,
  NotZRegular,
  PreconditionViolated,
  IncompatibleOrders,
  PrecisionTooLow,
  NotCoprime,
  BudgetExceeded,
  InvalidInput,
};

inline std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::NotAUnit: return "NotAUnit";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::PrecisionExhausted: return "PrecisionExhausted";
    case Errc::NotZRegular: return "NotZRegular";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::IncompatibleOrders: return "IncompatibleOrders";
    case Errc::PrecisionTooLow: return "PrecisionTooLow";
    case Errc::NotCoprime: return "NotCoprime";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace artin

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fpdense {

enum class Errc {
  InvalidArgument,
  NotCoprime,
  ModuliNotCoprime,
  SearchExhausted,
  FactorizationTooHard,
  InputTooLarge,
  NoCandidate,
  EscalationExhausted,
  CongruenceViolated,
  BudgetExceeded,
  ParseError,
};

std::string_view errc_name(Errc code) noexcept;

// Every domain failure surfaces as an Error carrying its code, so callers can
// branch on the kind (e.g. escalate on NoCandidate) without string matching.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace fpdense

#pragma once

#include <stdexcept>
#include <string>

namespace votepower {

/// Error conditions raised by the library. Each value names the violated
/// precondition or invariant; Error::what() carries the human-readable detail.
enum class Errc {
  // game construction and quota rules
  QuotaNonPositive,
  QuotaExceedsTotal,
  EmptyGame,
  NegativeWeight,
  TooManyVoters,
  LabelMismatch,
  NonPositiveSeats,
  InvalidMember,
  InvalidGame,
  // enumeration and oracles
  TooManyVotersForOracle,
  UnknownIndex,
  DegenerateGame,
  // statistics
  LengthMismatch,
  SeriesTooShort,
  ExactPValueInfeasible,
  OutOfRange,
  // dataset ingestion
  ParseError,
  TotalMismatch,
  EventMismatch,
  ChronologyError,
  UnknownSubperiod,
  UnknownParty,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace votepower

#include "votepower/errors.hpp"

namespace votepower {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::QuotaNonPositive: return "QuotaNonPositive";
    case Errc::QuotaExceedsTotal: return "QuotaExceedsTotal";
    case Errc::EmptyGame: return "EmptyGame";
    case Errc::NegativeWeight: return "NegativeWeight";
    case Errc::TooManyVoters: return "TooManyVoters";
    case Errc::LabelMismatch: return "LabelMismatch";
    case Errc::NonPositiveSeats: return "NonPositiveSeats";
    case Errc::InvalidMember: return "InvalidMember";
    case Errc::InvalidGame: return "InvalidGame";
    case Errc::TooManyVotersForOracle: return "TooManyVotersForOracle";
    case Errc::UnknownIndex: return "UnknownIndex";
    case Errc::DegenerateGame: return "DegenerateGame";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::SeriesTooShort: return "SeriesTooShort";
    case Errc::ExactPValueInfeasible: return "ExactPValueInfeasible";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::ParseError: return "ParseError";
    case Errc::TotalMismatch: return "TotalMismatch";
    case Errc::EventMismatch: return "EventMismatch";
    case Errc::ChronologyError: return "ChronologyError";
    case Errc::UnknownSubperiod: return "UnknownSubperiod";
    case Errc::UnknownParty: return "UnknownParty";
  }
  return "UnknownError";
}

}  // namespace votepower

#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "votepower/game.hpp"
#include "votepower/indices.hpp"
#include "votepower/stats.hpp"

namespace votepower {

/// The three coalition-level players: center-left pact, out-of-pact center,
/// and the right pact.
enum class Bloc { Concertacion, OutOfPact, Alianza };

inline constexpr std::array<Bloc, 3> kAllBlocs = {Bloc::Concertacion, Bloc::OutOfPact,
                                                  Bloc::Alianza};

std::string_view bloc_name(Bloc bloc) noexcept;
Bloc parse_bloc(std::string_view name);

enum class Level { Party, Coalition };

std::string_view level_name(Level level) noexcept;
Level parse_level(std::string_view name);

struct YearMonth {
  int year = 0;
  int month = 0;

  static YearMonth parse(std::string_view text);  // "YYYY-MM"
  std::string str() const;                        // "YYYY-MM"
  std::string short_str() const;                  // "MM/YY"

  friend auto operator<=>(const YearMonth&, const YearMonth&) = default;
};

inline constexpr int kPartyColumns = 16;

struct PartyColumn {
  std::string abbr;
  std::string name;
  Bloc coalition = Bloc::Concertacion;
  int spectrum_order = 0;  // 1-based, left to right
};

/// One row of the seat table: a maximal interval with constant seat counts.
struct SubperiodRecord {
  YearMonth start;
  YearMonth end;
  int legislative_period = 0;
  std::array<long long, kPartyColumns> seats{};
  long long total = 0;

  std::string label() const;  // "MM/YY-MM/YY"
};

struct ChangeEvent {
  YearMonth start;
  std::string reason;
  std::vector<std::pair<std::string, long long>> deltas;  // (abbr, signed change)
};

struct GameInstance {
  int subperiod = 0;
  LawType law = LawType::ConstitutionalReform2of3;
  Level level = Level::Party;
  WeightedVotingGame game;
};

struct PairCorrelation {
  std::string a;
  std::string b;
  CorrelationResult result;
};

/// Bundled file contents transcribed from the seat, party and change-event
/// tables; the CLI defaults to these when no files are given.
std::string_view bundled_seats_csv() noexcept;
std::string_view bundled_parties_csv() noexcept;
std::string_view bundled_events_csv() noexcept;

/// The loaded dataset: party columns, chronologically ordered seat records
/// and change-event annotations. Immutable after load; every derived-game
/// construction is pure.
class SenateDataset {
 public:
  /// Parses and validates the three CSV inputs. Structural violations throw
  /// (ParseError, TotalMismatch, ChronologyError). Event-reconciliation
  /// problems are warnings by default and throw Errc::EventMismatch under
  /// `strict_events`; warnings are collected on the dataset either way.
  static SenateDataset load(std::istream& seats, std::istream& parties,
                            std::istream& events, bool strict_events = false);
  static SenateDataset load_strings(std::string_view seats_csv,
                                    std::string_view parties_csv,
                                    std::string_view events_csv,
                                    bool strict_events = false);
  static SenateDataset load_files(const std::string& seats_path,
                                  const std::string& parties_path,
                                  const std::string& events_path,
                                  bool strict_events = false);
  static SenateDataset bundled(bool strict_events = false);

  const std::vector<PartyColumn>& columns() const { return columns_; }
  const std::vector<SubperiodRecord>& records() const { return records_; }
  const std::vector<ChangeEvent>& events() const { return events_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// Accepts a subperiod label ("03/06-11/06") or a start date ("2006-03").
  /// Throws Errc::UnknownSubperiod.
  int find_subperiod(std::string_view key) const;

  /// Column position for a party abbreviation. Throws Errc::UnknownParty.
  int find_party(std::string_view abbr) const;

  /// 16-voter game: weights are the subperiod's seat row, quota comes from
  /// the law applied to the row total.
  WeightedVotingGame party_game(int subperiod, LawType law) const;

  /// 3-voter game over (Concertacion, OutOfPact, Alianza) bloc seat sums;
  /// same quota as the party-level game.
  WeightedVotingGame coalition_game(int subperiod, LawType law) const;

  std::array<long long, 3> bloc_weights(int subperiod) const;

  /// Every (subperiod, law, level) combination, subperiod-major then law
  /// then level; 8 games per subperiod.
  std::vector<GameInstance> all_games() const;

  /// One chronological series per voter of the chosen index at the chosen
  /// quota; party level yields 16 series in spectrum order, coalition level
  /// yields 3.
  std::vector<Series> timeline(IndexKind index, LawType law, Level level) const;

  /// All party pairs correlated on their timelines under one law.
  /// Zero-variance pairs are flagged in the result, not fatal.
  std::vector<PairCorrelation> correlate_parties(
      IndexKind index, LawType law, CorrelationMethod method, double alpha = 0.05,
      PValueMethod pvalues = PValueMethod::Approximate) const;

  /// The six law-type pairs correlated on one party's timelines.
  std::vector<PairCorrelation> correlate_quorums(
      IndexKind index, std::string_view party_abbr, CorrelationMethod method,
      double alpha = 0.05, PValueMethod pvalues = PValueMethod::Approximate) const;

 private:
  SenateDataset() = default;

  std::vector<PartyColumn> columns_;
  std::vector<SubperiodRecord> records_;
  std::vector<ChangeEvent> events_;
  std::vector<std::string> warnings_;
};

}  // namespace votepower

#pragma once

#include <string>
#include <vector>

#include "votepower/game.hpp"
#include "votepower/indices.hpp"

namespace votepower {

enum class FamilyKind { Winning, MinimalWinning, Vulnerable };

std::string_view family_kind_name(FamilyKind kind) noexcept;

/// A set of coalitions of one game, all satisfying the kind's predicate.
/// Coalitions are sorted by ascending bit pattern for deterministic output.
struct CoalitionFamily {
  std::string game_ref;
  FamilyKind kind = FamilyKind::Winning;
  std::vector<Coalition> coalitions;
};

/// Enumeration and oracle caps. Configuration constants, not hard API
/// limits; callers may widen them knowingly.
struct EnumerationLimits {
  int max_enumeration_voters = 24;       // full subset enumeration
  int max_permutation_oracle_voters = 10;  // n! permutation oracle
  int max_subset_oracle_voters = 20;       // 2^n direct-definition oracles
};

/// All coalitions with weight >= quota. Throws Errc::TooManyVoters above the
/// enumeration cap.
CoalitionFamily enumerate_winning(const WeightedVotingGame& game,
                                  const EnumerationLimits& limits = {});

/// Winning coalitions in which every member is critical. Enumerated by a
/// pruned depth-first search: zero-weight voters can never be members, and
/// no strict superset of a winning coalition is minimal.
CoalitionFamily enumerate_minimal_winning(const WeightedVotingGame& game,
                                          const EnumerationLimits& limits = {});

/// Winning coalitions with at least one critical member.
CoalitionFamily enumerate_vulnerable(const WeightedVotingGame& game,
                                     const EnumerationLimits& limits = {});

/// Members whose removal turns the coalition losing. Empty when the
/// coalition is losing.
Coalition critical_players(const WeightedVotingGame& game, Coalition c);

/// Brute-force Shapley-Shubik: enumerates all n! voter orderings and counts
/// pivots. Exact; cross-validation oracle for the production implementation.
PowerVector oracle_shapley(const WeightedVotingGame& game,
                           const EnumerationLimits& limits = {});

/// Direct-definition evaluation of an index over explicitly enumerated
/// subsets, with no counting shortcuts. ShapleyShubik dispatches to the
/// permutation oracle; the other four scan all 2^n subsets.
PowerVector oracle_index(const WeightedVotingGame& game, IndexKind kind,
                         const EnumerationLimits& limits = {});

/// JSON object {game, kind, coalitions: [[member indices]...]}, sorted.
std::string family_to_json(const CoalitionFamily& family);

}  // namespace votepower

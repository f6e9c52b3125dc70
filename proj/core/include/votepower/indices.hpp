#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "votepower/game.hpp"
#include "votepower/rational.hpp"

namespace votepower {

enum class IndexKind {
  ShapleyShubik,
  Banzhaf,
  DeeganPackel,
  HollerPackel,
  Johnston,
};

inline constexpr std::array<IndexKind, 5> kAllIndices = {
    IndexKind::ShapleyShubik, IndexKind::Banzhaf, IndexKind::DeeganPackel,
    IndexKind::HollerPackel, IndexKind::Johnston,
};

/// Canonical short id: "ss", "banzhaf", "dp", "hp", "johnston".
std::string_view index_id(IndexKind kind) noexcept;
std::string_view index_description(IndexKind kind) noexcept;

/// Accepts the short ids plus the spelled-out aliases ("shapley",
/// "deegan-packel", "holler-packel", "public-good"). Throws Errc::ParseError.
IndexKind parse_index(std::string_view name);

/// One exact rational index value per voter. All five indices produced by
/// this library are normalized: values are in [0,1] and sum to exactly 1.
struct PowerVector {
  IndexKind index = IndexKind::ShapleyShubik;
  std::string game_ref;  // the game's "q;w,..." literal
  std::vector<Rational> values;
};

/// Voters grouped from most to least powerful; exact ties share a group,
/// members within a group are listed in ascending position.
struct Ranking {
  std::vector<std::vector<int>> groups;

  bool operator==(const Ranking&) const = default;
};

/// Shapley-Shubik index via generating-function dynamic programming: one
/// (size x weight) subset-count table for the whole game, then per-voter
/// tables recovered by deconvolution. Exact rationals; pivot counts over
/// voter orderings divided by n!.
PowerVector shapley_shubik(const WeightedVotingGame& game);

struct BanzhafResult {
  PowerVector normalized;
  std::vector<BigInt> swing_counts;  // raw per-voter swing counts
};

/// Banzhaf index via a weight-only subset-count table. The raw count for
/// voter i is the number of coalitions it swings from losing to winning.
BanzhafResult banzhaf(const WeightedVotingGame& game);

/// Deegan-Packel: average over minimal winning coalitions of the equal split
/// within each coalition containing the voter.
PowerVector deegan_packel(const WeightedVotingGame& game);

/// Holler-Packel (Public Good Index): voter's share of minimal-winning-
/// coalition memberships.
PowerVector holler_packel(const WeightedVotingGame& game);

/// Johnston: every vulnerable winning coalition distributes one unit equally
/// among its critical members; per-voter totals are normalized.
PowerVector johnston(const WeightedVotingGame& game);

PowerVector compute_index(const WeightedVotingGame& game, IndexKind kind);

Ranking rank_players(const PowerVector& pv);

/// JSON object {game, index, values: ["p/q"...], decimals: ["0.333333"...]}.
std::string power_vector_to_json(const PowerVector& pv, int precision = 6);

namespace detail {

/// table[s][w] = number of voter subsets with size s and weight w, for
/// w < width. Truncating the weight axis at `width` is safe because counts
/// only ever flow toward higher weights.
using CountTable = std::vector<std::vector<BigInt>>;

CountTable subset_count_table(std::span<const long long> weights, long long width);

/// Deconvolution: given the table over all voters, recover the table over
/// all voters except one of weight `voter_weight`. Checked against direct
/// per-voter rebuilds in the test suite.
CountTable remove_voter(const CountTable& full, long long voter_weight);

/// counts[w] = number of voter subsets (any size) with weight w, w < width.
std::vector<BigInt> weight_count_table(std::span<const long long> weights, long long width);

std::vector<BigInt> remove_voter_weight_only(const std::vector<BigInt>& full,
                                             long long voter_weight);

}  // namespace detail

}  // namespace votepower

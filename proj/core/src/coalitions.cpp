#include "votepower/coalitions.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <nlohmann/json.hpp>
#include <numeric>

#include "votepower/errors.hpp"

namespace votepower {

std::string_view family_kind_name(FamilyKind kind) noexcept {
  switch (kind) {
    case FamilyKind::Winning: return "winning";
    case FamilyKind::MinimalWinning: return "minimal_winning";
    case FamilyKind::Vulnerable: return "vulnerable";
  }
  return "?";
}

namespace {

void check_enumeration_cap(const WeightedVotingGame& game, int cap) {
  if (game.num_voters() > cap)
    raise(Errc::TooManyVoters, "enumeration over " + std::to_string(game.num_voters()) +
                                   " voters exceeds the cap of " + std::to_string(cap));
}

long long mask_weight(const WeightedVotingGame& game, std::uint64_t mask) {
  long long sum = 0;
  for (std::uint64_t b = mask; b != 0; b &= b - 1)
    sum += game.weight_of(std::countr_zero(b));
  return sum;
}

}  // namespace

CoalitionFamily enumerate_winning(const WeightedVotingGame& game,
                                  const EnumerationLimits& limits) {
  check_enumeration_cap(game, limits.max_enumeration_voters);
  CoalitionFamily family{game.literal(), FamilyKind::Winning, {}};
  const int n = game.num_voters();
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask)
    if (mask_weight(game, mask) >= game.quota())
      family.coalitions.emplace_back(mask);
  return family;
}

CoalitionFamily enumerate_minimal_winning(const WeightedVotingGame& game,
                                          const EnumerationLimits& limits) {
  check_enumeration_cap(game, limits.max_enumeration_voters);
  CoalitionFamily family{game.literal(), FamilyKind::MinimalWinning, {}};

  const int n = game.num_voters();
  const auto weights = game.weights();
  const long long quota = game.quota();

  // Zero-weight voters are never critical, hence never members of a minimal
  // winning coalition; drop them from the search space outright.
  std::vector<int> voters;
  for (int i = 0; i < n; ++i)
    if (weights[static_cast<size_t>(i)] > 0) voters.push_back(i);

  std::vector<long long> suffix(voters.size() + 1, 0);
  for (size_t i = voters.size(); i-- > 0;)
    suffix[i] = suffix[i + 1] + weights[static_cast<size_t>(voters[i])];

  // Depth-first over positive-weight voters in index order. A branch dies
  // when the remaining weight cannot reach the quota; it stops descending the
  // moment it wins, because strict supersets of winning coalitions contain a
  // non-critical member. A winning set is minimal iff even its lightest
  // member is critical.
  struct Frame {
    std::uint64_t mask;
    long long weight;
    long long min_member;
  };
  auto dfs = [&](auto&& self, size_t idx, Frame f) -> void {
    if (f.weight >= quota) {
      if (f.weight - f.min_member < quota) family.coalitions.emplace_back(f.mask);
      return;
    }
    if (idx == voters.size() || f.weight + suffix[idx] < quota) return;
    const int voter = voters[idx];
    const long long w = weights[static_cast<size_t>(voter)];
    self(self, idx + 1,
         Frame{f.mask | (1ull << voter), f.weight + w, std::min(f.min_member, w)});
    self(self, idx + 1, f);
  };
  dfs(dfs, 0, Frame{0, 0, std::numeric_limits<long long>::max()});

  std::sort(family.coalitions.begin(), family.coalitions.end());
  return family;
}

CoalitionFamily enumerate_vulnerable(const WeightedVotingGame& game,
                                     const EnumerationLimits& limits) {
  check_enumeration_cap(game, limits.max_enumeration_voters);
  CoalitionFamily family{game.literal(), FamilyKind::Vulnerable, {}};
  const int n = game.num_voters();
  const long long quota = game.quota();
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    const long long weight = mask_weight(game, mask);
    if (weight < quota) continue;
    for (std::uint64_t b = mask; b != 0; b &= b - 1) {
      if (weight - game.weight_of(std::countr_zero(b)) < quota) {
        family.coalitions.emplace_back(mask);
        break;
      }
    }
  }
  return family;
}

Coalition critical_players(const WeightedVotingGame& game, Coalition c) {
  const long long weight = game.coalition_weight(c);
  if (weight < game.quota()) return Coalition();
  std::uint64_t critical = 0;
  for (std::uint64_t b = c.bits(); b != 0; b &= b - 1) {
    const int voter = std::countr_zero(b);
    if (weight - game.weight_of(voter) < game.quota()) critical |= 1ull << voter;
  }
  return Coalition(critical);
}

PowerVector oracle_shapley(const WeightedVotingGame& game,
                           const EnumerationLimits& limits) {
  const int n = game.num_voters();
  if (n > limits.max_permutation_oracle_voters)
    raise(Errc::TooManyVotersForOracle,
          std::to_string(n) + " voters exceed the permutation-oracle cap of " +
              std::to_string(limits.max_permutation_oracle_voters));

  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::vector<unsigned long long> pivots(static_cast<size_t>(n), 0);
  do {
    long long acc = 0;
    for (int voter : order) {
      acc += game.weight_of(voter);
      if (acc >= game.quota()) {
        ++pivots[static_cast<size_t>(voter)];
        break;
      }
    }
  } while (std::next_permutation(order.begin(), order.end()));

  const BigInt total = factorial(static_cast<unsigned>(n));
  PowerVector pv{IndexKind::ShapleyShubik, game.literal(), {}};
  pv.values.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    pv.values.emplace_back(BigInt(pivots[static_cast<size_t>(i)]), total);
  return pv;
}

namespace {

// helpers shared by the subset oracles; every quantity is recomputed from the
// set definitions, with no incremental counting
std::vector<int> mask_members(std::uint64_t mask) {
  std::vector<int> out;
  for (std::uint64_t b = mask; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

PowerVector oracle_banzhaf(const WeightedVotingGame& game) {
  const int n = game.num_voters();
  std::vector<BigInt> swings(static_cast<size_t>(n), 0);
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    const long long weight = mask_weight(game, mask);
    for (int i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) continue;
      if (weight < game.quota() && weight + game.weight_of(i) >= game.quota())
        ++swings[static_cast<size_t>(i)];
    }
  }
  const BigInt total = std::accumulate(swings.begin(), swings.end(), BigInt(0));
  if (total == 0) raise(Errc::DegenerateGame, "no voter swings any coalition");
  PowerVector pv{IndexKind::Banzhaf, game.literal(), {}};
  for (const BigInt& s : swings) pv.values.emplace_back(s, total);
  return pv;
}

PowerVector oracle_mwc_based(const WeightedVotingGame& game, IndexKind kind) {
  const int n = game.num_voters();
  // membership_by_size[i][s]: number of minimal winning coalitions of size s
  // containing voter i
  std::vector<std::vector<unsigned long long>> membership(
      static_cast<size_t>(n), std::vector<unsigned long long>(static_cast<size_t>(n) + 1, 0));
  unsigned long long family_size = 0;
  for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
    const long long weight = mask_weight(game, mask);
    if (weight < game.quota()) continue;
    const auto members = mask_members(mask);
    bool minimal = true;
    for (int m : members)
      if (weight - game.weight_of(m) >= game.quota()) {
        minimal = false;
        break;
      }
    if (!minimal) continue;
    ++family_size;
    for (int m : members)
      ++membership[static_cast<size_t>(m)][members.size()];
  }

  PowerVector pv{kind, game.literal(), {}};
  if (kind == IndexKind::DeeganPackel) {
    for (int i = 0; i < n; ++i) {
      Rational sum = 0;
      for (size_t s = 1; s <= static_cast<size_t>(n); ++s)
        if (const auto c = membership[static_cast<size_t>(i)][s])
          sum += Rational(BigInt(c), BigInt(s));
      pv.values.push_back(sum / BigInt(family_size));
    }
  } else {
    // Holler-Packel: share of minimal-winning-coalition memberships
    std::vector<BigInt> counts(static_cast<size_t>(n), 0);
    BigInt total = 0;
    for (int i = 0; i < n; ++i) {
      for (size_t s = 1; s <= static_cast<size_t>(n); ++s)
        counts[static_cast<size_t>(i)] += membership[static_cast<size_t>(i)][s];
      total += counts[static_cast<size_t>(i)];
    }
    for (int i = 0; i < n; ++i) pv.values.emplace_back(counts[static_cast<size_t>(i)], total);
  }
  return pv;
}

PowerVector oracle_johnston(const WeightedVotingGame& game) {
  const int n = game.num_voters();
  // share_counts[i][c]: number of vulnerable coalitions where voter i is one
  // of exactly c critical members
  std::vector<std::vector<unsigned long long>> share_counts(
      static_cast<size_t>(n), std::vector<unsigned long long>(static_cast<size_t>(n) + 1, 0));
  unsigned long long vulnerable = 0;
  for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
    const long long weight = mask_weight(game, mask);
    if (weight < game.quota()) continue;
    std::vector<int> critical;
    for (int m : mask_members(mask))
      if (weight - game.weight_of(m) < game.quota()) critical.push_back(m);
    if (critical.empty()) continue;
    ++vulnerable;
    for (int m : critical) ++share_counts[static_cast<size_t>(m)][critical.size()];
  }
  if (vulnerable == 0) raise(Errc::DegenerateGame, "no vulnerable winning coalition");
  PowerVector pv{IndexKind::Johnston, game.literal(), {}};
  for (int i = 0; i < n; ++i) {
    Rational sum = 0;
    for (size_t c = 1; c <= static_cast<size_t>(n); ++c)
      if (const auto k = share_counts[static_cast<size_t>(i)][c])
        sum += Rational(BigInt(k), BigInt(c));
    pv.values.push_back(sum / BigInt(vulnerable));
  }
  return pv;
}

}  // namespace

PowerVector oracle_index(const WeightedVotingGame& game, IndexKind kind,
                         const EnumerationLimits& limits) {
  if (kind == IndexKind::ShapleyShubik) return oracle_shapley(game, limits);
  const int n = game.num_voters();
  if (n > limits.max_subset_oracle_voters)
    raise(Errc::TooManyVotersForOracle,
          std::to_string(n) + " voters exceed the subset-oracle cap of " +
              std::to_string(limits.max_subset_oracle_voters));
  switch (kind) {
    case IndexKind::Banzhaf: return oracle_banzhaf(game);
    case IndexKind::DeeganPackel: return oracle_mwc_based(game, IndexKind::DeeganPackel);
    case IndexKind::HollerPackel: return oracle_mwc_based(game, IndexKind::HollerPackel);
    case IndexKind::Johnston: return oracle_johnston(game);
    default: raise(Errc::UnknownIndex, "unrecognized index kind");
  }
}

std::string family_to_json(const CoalitionFamily& family) {
  nlohmann::ordered_json j;
  j["game"] = family.game_ref;
  j["kind"] = family_kind_name(family.kind);
  auto arr = nlohmann::ordered_json::array();
  for (const Coalition& c : family.coalitions) arr.push_back(c.members());
  j["coalitions"] = std::move(arr);
  return j.dump();
}

}  // namespace votepower

#include "votepower/indices.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <numeric>

#include "votepower/coalitions.hpp"
#include "votepower/errors.hpp"

namespace votepower {

std::string_view index_id(IndexKind kind) noexcept {
  switch (kind) {
    case IndexKind::ShapleyShubik: return "ss";
    case IndexKind::Banzhaf: return "banzhaf";
    case IndexKind::DeeganPackel: return "dp";
    case IndexKind::HollerPackel: return "hp";
    case IndexKind::Johnston: return "johnston";
  }
  return "?";
}

std::string_view index_description(IndexKind kind) noexcept {
  switch (kind) {
    case IndexKind::ShapleyShubik: return "Shapley-Shubik";
    case IndexKind::Banzhaf: return "Banzhaf";
    case IndexKind::DeeganPackel: return "Deegan-Packel";
    case IndexKind::HollerPackel: return "Holler-Packel (Public Good Index)";
    case IndexKind::Johnston: return "Johnston";
  }
  return "?";
}

IndexKind parse_index(std::string_view name) {
  if (name == "ss" || name == "shapley" || name == "shapley-shubik")
    return IndexKind::ShapleyShubik;
  if (name == "banzhaf" || name == "bz") return IndexKind::Banzhaf;
  if (name == "dp" || name == "deegan-packel") return IndexKind::DeeganPackel;
  if (name == "hp" || name == "holler-packel" || name == "public-good")
    return IndexKind::HollerPackel;
  if (name == "johnston") return IndexKind::Johnston;
  raise(Errc::ParseError, "unknown index '" + std::string(name) +
                              "' (expected ss, banzhaf, dp, hp or johnston)");
}

namespace detail {

CountTable subset_count_table(std::span<const long long> weights, long long width) {
  const size_t n = weights.size();
  const size_t w_cap = static_cast<size_t>(std::max<long long>(width, 1));
  CountTable table(n + 1, std::vector<BigInt>(w_cap, BigInt(0)));
  table[0][0] = 1;
  size_t used = 0;
  for (const long long wv : weights) {
    ++used;
    // 0/1 knapsack, descending so each voter contributes once
    for (size_t s = used; s-- > 0;) {
      for (long long w = static_cast<long long>(w_cap) - 1 - wv; w >= 0; --w) {
        const BigInt& c = table[s][static_cast<size_t>(w)];
        if (c != 0) table[s + 1][static_cast<size_t>(w + wv)] += c;
      }
    }
  }
  return table;
}

CountTable remove_voter(const CountTable& full, long long voter_weight) {
  const size_t rows = full.size();  // n+1
  const size_t width = full[0].size();
  CountTable out(rows - 1, std::vector<BigInt>(width, BigInt(0)));
  // full[s][w] = out[s][w] + out[s-1][w-wv]; solve ascending in s
  for (size_t s = 0; s < rows - 1; ++s) {
    for (size_t w = 0; w < width; ++w) {
      BigInt c = full[s][w];
      if (s > 0 && static_cast<long long>(w) >= voter_weight)
        c -= out[s - 1][w - static_cast<size_t>(voter_weight)];
      out[s][w] = std::move(c);
    }
  }
  return out;
}

std::vector<BigInt> weight_count_table(std::span<const long long> weights, long long width) {
  const size_t w_cap = static_cast<size_t>(std::max<long long>(width, 1));
  std::vector<BigInt> counts(w_cap, BigInt(0));
  counts[0] = 1;
  for (const long long wv : weights) {
    if (wv == 0) {
      for (auto& c : counts) c *= 2;
      continue;
    }
    for (long long w = static_cast<long long>(w_cap) - 1 - wv; w >= 0; --w) {
      const BigInt& c = counts[static_cast<size_t>(w)];
      if (c != 0) counts[static_cast<size_t>(w + wv)] += c;
    }
  }
  return counts;
}

std::vector<BigInt> remove_voter_weight_only(const std::vector<BigInt>& full,
                                             long long voter_weight) {
  std::vector<BigInt> out(full.size());
  if (voter_weight == 0) {
    // a zero-weight voter pairs every subset with its twin, doubling counts
    for (size_t w = 0; w < full.size(); ++w) out[w] = full[w] / 2;
    return out;
  }
  for (size_t w = 0; w < full.size(); ++w) {
    BigInt c = full[w];
    if (static_cast<long long>(w) >= voter_weight)
      c -= out[w - static_cast<size_t>(voter_weight)];
    out[w] = std::move(c);
  }
  return out;
}

}  // namespace detail

namespace {

void check_table_width(const WeightedVotingGame& game) {
  // the DP tables are O(n * quota); refuse games whose table cannot fit
  constexpr long long kMaxTableCells = 1ll << 26;
  if (game.quota() * (game.num_voters() + 1) > kMaxTableCells)
    raise(Errc::InvalidGame, "quota " + std::to_string(game.quota()) +
                                 " makes the counting table too large");
}

}  // namespace

PowerVector shapley_shubik(const WeightedVotingGame& game) {
  check_table_width(game);
  const int n = game.num_voters();
  const long long quota = game.quota();

  std::vector<BigInt> fact(static_cast<size_t>(n) + 1);
  fact[0] = 1;
  for (size_t k = 1; k < fact.size(); ++k) fact[k] = fact[k - 1] * static_cast<unsigned>(k);

  // subsets with weight below the quota are the only ones a pivot can join
  const auto full = detail::subset_count_table(game.weights(), quota);

  PowerVector pv{IndexKind::ShapleyShubik, game.literal(), {}};
  pv.values.assign(static_cast<size_t>(n), Rational(0));
  for (int i = 0; i < n; ++i) {
    const long long wi = game.weight_of(i);
    if (wi == 0) continue;  // never a pivot
    const auto without = detail::remove_voter(full, wi);
    BigInt orderings = 0;
    for (size_t s = 0; s < without.size(); ++s) {
      BigInt subsets = 0;
      for (long long w = std::max<long long>(0, quota - wi); w < quota; ++w)
        subsets += without[s][static_cast<size_t>(w)];
      if (subsets != 0)
        orderings += subsets * fact[s] * fact[static_cast<size_t>(n) - 1 - s];
    }
    pv.values[static_cast<size_t>(i)] = Rational(orderings, fact[static_cast<size_t>(n)]);
  }
  return pv;
}

BanzhafResult banzhaf(const WeightedVotingGame& game) {
  check_table_width(game);
  const int n = game.num_voters();
  const long long quota = game.quota();
  const auto full = detail::weight_count_table(game.weights(), quota);

  BanzhafResult result;
  result.swing_counts.assign(static_cast<size_t>(n), BigInt(0));
  BigInt total = 0;
  for (int i = 0; i < n; ++i) {
    const long long wi = game.weight_of(i);
    if (wi == 0) continue;  // swings nothing
    const auto without = detail::remove_voter_weight_only(full, wi);
    BigInt swings = 0;
    for (long long w = std::max<long long>(0, quota - wi); w < quota; ++w)
      swings += without[static_cast<size_t>(w)];
    result.swing_counts[static_cast<size_t>(i)] = swings;
    total += swings;
  }
  // the grand coalition wins and the empty one loses, so someone must swing
  if (total == 0) raise(Errc::DegenerateGame, "no voter swings any coalition");

  result.normalized = PowerVector{IndexKind::Banzhaf, game.literal(), {}};
  for (const BigInt& s : result.swing_counts)
    result.normalized.values.emplace_back(s, total);
  return result;
}

namespace {

PowerVector from_mwc_family(const WeightedVotingGame& game, IndexKind kind) {
  const auto family = enumerate_minimal_winning(game);
  const int n = game.num_voters();
  PowerVector pv{kind, game.literal(), {}};

  if (kind == IndexKind::DeeganPackel) {
    std::vector<Rational> split_sums(static_cast<size_t>(n), Rational(0));
    for (const Coalition& c : family.coalitions) {
      const Rational share(1, c.size());
      for (int m : c.members()) split_sums[static_cast<size_t>(m)] += share;
    }
    const BigInt m_count(family.coalitions.size());
    for (auto& v : split_sums) pv.values.push_back(v / m_count);
  } else {
    std::vector<BigInt> memberships(static_cast<size_t>(n), BigInt(0));
    BigInt total = 0;
    for (const Coalition& c : family.coalitions)
      for (int m : c.members()) {
        ++memberships[static_cast<size_t>(m)];
        ++total;
      }
    for (const BigInt& m : memberships) pv.values.emplace_back(m, total);
  }
  return pv;
}

}  // namespace

PowerVector deegan_packel(const WeightedVotingGame& game) {
  return from_mwc_family(game, IndexKind::DeeganPackel);
}

PowerVector holler_packel(const WeightedVotingGame& game) {
  return from_mwc_family(game, IndexKind::HollerPackel);
}

PowerVector johnston(const WeightedVotingGame& game) {
  const auto family = enumerate_vulnerable(game);
  const int n = game.num_voters();
  std::vector<Rational> raw(static_cast<size_t>(n), Rational(0));
  Rational total = 0;
  for (const Coalition& c : family.coalitions) {
    const Coalition critical = critical_players(game, c);
    const Rational share(1, critical.size());
    for (int m : critical.members()) raw[static_cast<size_t>(m)] += share;
    total += 1;
  }
  if (total == 0) raise(Errc::DegenerateGame, "no vulnerable winning coalition");
  PowerVector pv{IndexKind::Johnston, game.literal(), {}};
  for (auto& v : raw) pv.values.push_back(v / total);
  return pv;
}

PowerVector compute_index(const WeightedVotingGame& game, IndexKind kind) {
  switch (kind) {
    case IndexKind::ShapleyShubik: return shapley_shubik(game);
    case IndexKind::Banzhaf: return banzhaf(game).normalized;
    case IndexKind::DeeganPackel: return deegan_packel(game);
    case IndexKind::HollerPackel: return holler_packel(game);
    case IndexKind::Johnston: return johnston(game);
  }
  raise(Errc::UnknownIndex, "unrecognized index kind");
}

Ranking rank_players(const PowerVector& pv) {
  const int n = static_cast<int>(pv.values.size());
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& va = pv.values[static_cast<size_t>(a)];
    const auto& vb = pv.values[static_cast<size_t>(b)];
    if (va != vb) return va > vb;
    return a < b;
  });
  Ranking ranking;
  for (int i : order) {
    if (!ranking.groups.empty() &&
        pv.values[static_cast<size_t>(i)] ==
            pv.values[static_cast<size_t>(ranking.groups.back().front())])
      ranking.groups.back().push_back(i);
    else
      ranking.groups.push_back({i});
  }
  return ranking;
}

std::string power_vector_to_json(const PowerVector& pv, int precision) {
  nlohmann::ordered_json j;
  j["game"] = pv.game_ref;
  j["index"] = std::string(index_id(pv.index));
  auto values = nlohmann::ordered_json::array();
  auto decimals = nlohmann::ordered_json::array();
  for (const Rational& v : pv.values) {
    values.push_back(to_fraction_string(v));
    decimals.push_back(to_decimal_string(v, precision));
  }
  j["values"] = std::move(values);
  j["decimals"] = std::move(decimals);
  return j.dump();
}

}  // namespace votepower

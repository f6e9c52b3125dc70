#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support/test_support.hpp"
#include "votepower/errors.hpp"
#include "votepower/game.hpp"

using namespace votepower;
using testing::random_game;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::ParseError;
}

}  // namespace

TEST_CASE("game construction validates its invariants") {
  const WeightedVotingGame g(20, {18, 10, 10});
  CHECK(g.quota() == 20);
  CHECK(g.num_voters() == 3);
  CHECK(g.total_weight() == 38);

  CHECK(WeightedVotingGame(1, {1}).num_voters() == 1);  // single dictator

  CHECK(code_of([] { WeightedVotingGame(5, {2, 2}); }) == Errc::QuotaExceedsTotal);
  CHECK(code_of([] { WeightedVotingGame(0, {1, 1}); }) == Errc::QuotaNonPositive);
  CHECK(code_of([] { WeightedVotingGame(-3, {1, 1}); }) == Errc::QuotaNonPositive);
  CHECK(code_of([] { WeightedVotingGame(1, {}); }) == Errc::EmptyGame);
  CHECK(code_of([] { WeightedVotingGame(1, {2, -1}); }) == Errc::NegativeWeight);
  CHECK(code_of([] { WeightedVotingGame(1, std::vector<long long>(65, 1)); }) ==
        Errc::TooManyVoters);
  CHECK(code_of([] { WeightedVotingGame(1, {1, 1}, {"a"}); }) == Errc::LabelMismatch);

  // zero-weight voters are legal
  const WeightedVotingGame z(1, {1, 0});
  CHECK(z.weight_of(1) == 0);
}

TEST_CASE("quota_for applies floor(fraction * seats) + 1") {
  CHECK(quota_for(LawType::ConstitutionalReform2of3, 38) == 26);
  CHECK(quota_for(LawType::ConstitutionalInterpretation3of5, 38) == 23);
  CHECK(quota_for(LawType::ConstitutionalOrganic4of7, 38) == 22);
  CHECK(quota_for(LawType::QualifiedQuorum1of2, 38) == 20);

  // independent integer-arithmetic route: repeated subtraction for the floor
  const auto slow_quota = [](LawType law, long long seats) {
    const auto [num, den] = law_fraction(law);
    long long numerator = num * seats, floor_value = 0;
    while (numerator >= den) {
      numerator -= den;
      ++floor_value;
    }
    return floor_value + 1;
  };
  CHECK(quota_for(LawType::ConstitutionalOrganic4of7, 47) == 27);
  CHECK(slow_quota(LawType::ConstitutionalOrganic4of7, 47) == 27);

  // exact-division case keeps the +1
  CHECK(quota_for(LawType::ConstitutionalReform2of3, 36) == 25);
  CHECK(slow_quota(LawType::ConstitutionalReform2of3, 36) == 25);

  CHECK(code_of([] { quota_for(LawType::QualifiedQuorum1of2, 0); }) == Errc::NonPositiveSeats);

  SUBCASE("full quota table for every seat count in the dataset") {
    const struct {
      long long seats;
      std::array<long long, 4> quotas;
    } rows[] = {
        {38, {26, 23, 22, 20}}, {47, {32, 29, 27, 24}}, {46, {31, 28, 27, 24}},
        {48, {33, 29, 28, 25}}, {49, {33, 30, 29, 25}}, {37, {25, 23, 22, 19}},
        {36, {25, 22, 21, 19}},
    };
    for (const auto& row : rows)
      for (size_t l = 0; l < kAllLaws.size(); ++l)
        CHECK(quota_for(kAllLaws[l], row.seats) == row.quotas[l]);
  }

  SUBCASE("monotone in the seat count; qualified quorum is an absolute majority") {
    for (LawType law : kAllLaws)
      for (long long n = 1; n < 200; ++n)
        CHECK(quota_for(law, n) <= quota_for(law, n + 1));
    for (long long n = 1; n < 200; ++n)
      CHECK(2 * quota_for(LawType::QualifiedQuorum1of2, n) > n);
  }
}

TEST_CASE("law names parse and round-trip") {
  CHECK(parse_law("reform23") == LawType::ConstitutionalReform2of3);
  CHECK(parse_law("reform35") == LawType::ConstitutionalInterpretation3of5);
  CHECK(parse_law("interpretation") == LawType::ConstitutionalInterpretation3of5);
  CHECK(parse_law("organic") == LawType::ConstitutionalOrganic4of7);
  CHECK(parse_law("qualified") == LawType::QualifiedQuorum1of2);
  CHECK(code_of([] { parse_law("common"); }) == Errc::ParseError);
  for (LawType law : kAllLaws) CHECK(parse_law(std::string(law_id(law))) == law);
}

TEST_CASE("coalition weight and winning tests") {
  const WeightedVotingGame g(20, {18, 10, 10});
  CHECK(g.coalition_weight(Coalition::of({0, 1})) == 28);
  CHECK(g.coalition_weight(Coalition()) == 0);
  CHECK(WeightedVotingGame(3, {2, 1, 1}).coalition_weight(Coalition::of({1, 2})) == 2);

  CHECK(g.is_winning(Coalition::of({1, 2})));   // 10+10 >= 20
  CHECK(!g.is_winning(Coalition::of({0})));     // isolated party loses
  CHECK(g.is_winning(g.grand_coalition()));

  CHECK(code_of([&] { g.coalition_weight(Coalition::of({3})); }) == Errc::InvalidMember);
}

TEST_CASE("game literals parse and round-trip") {
  const auto g = WeightedVotingGame::parse("20;18,10,10");
  CHECK(g == WeightedVotingGame(20, {18, 10, 10}));
  CHECK(g.literal() == "20;18,10,10");
  CHECK(WeightedVotingGame::parse(" 20 ; 18 , 10 , 10 ") == g);  // whitespace-insensitive

  CHECK(code_of([] { WeightedVotingGame::parse("20:18,10"); }) == Errc::ParseError);
  CHECK(code_of([] { WeightedVotingGame::parse("20;18,,10"); }) == Errc::ParseError);
  CHECK(code_of([] { WeightedVotingGame::parse("20;"); }) == Errc::ParseError);
  // parses fine, then validation rejects it
  CHECK(code_of([] { WeightedVotingGame::parse("3;2,-1"); }) == Errc::NegativeWeight);

  std::mt19937_64 rng(20240501);
  for (int i = 0; i < 200; ++i) {
    const auto game = testing::random_game(rng, 1, 12, 9);
    CHECK(WeightedVotingGame::parse(game.literal()) == game);
  }
}

TEST_CASE("winning is monotone under coalition growth") {
  std::mt19937_64 rng(987654);
  for (int i = 0; i < 300; ++i) {
    const auto game = testing::random_game(rng, 1, 12, 9);
    const int n = game.num_voters();
    std::uniform_int_distribution<std::uint64_t> mask_dist(0, (1ull << n) - 1);
    const Coalition small(mask_dist(rng));
    const Coalition large(small.bits() | mask_dist(rng));
    CHECK(small.subset_of(large));
    if (game.is_winning(small)) CHECK(game.is_winning(large));
    if (!game.is_winning(large)) CHECK(!game.is_winning(small));
  }
}

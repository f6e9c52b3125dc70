#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "votepower/errors.hpp"
#include "votepower/senate.hpp"

using namespace votepower;

namespace {

std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::string join(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

/// Rows [first, last] (1-based over data rows) of the bundled seat table,
/// with a mechanically regenerated event file so reconciliation holds.
struct RestrictedDataset {
  std::string seats;
  std::string events;
};

RestrictedDataset restrict_bundled(size_t first, size_t last) {
  const auto seat_lines = lines_of(bundled_seats_csv());
  std::vector<std::string> kept{seat_lines[0]};
  for (size_t r = first; r <= last; ++r) kept.push_back(seat_lines[r]);

  std::vector<std::string> events{"start,reason,deltas"};
  std::vector<std::vector<long long>> seat_values;
  std::vector<std::string> starts;
  for (size_t r = 1; r < kept.size(); ++r) {
    std::istringstream in(kept[r]);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(in, field, ',')) fields.push_back(field);
    starts.push_back(fields[0]);
    std::vector<long long> row;
    for (size_t c = 3; c < 3 + kPartyColumns; ++c) row.push_back(std::stoll(fields[c]));
    seat_values.push_back(std::move(row));
  }
  const char* abbrs[] = {"MAS", "PS",  "PRSD", "PPD", "IND_CL", "DC",    "IND_C", "DRP",
                         "SA",  "AMP", "CH1",  "PRI", "UCC",    "IND_R", "RN",    "UDI"};
  for (size_t r = 0; r < seat_values.size(); ++r) {
    std::string deltas;
    if (r > 0)
      for (size_t c = 0; c < kPartyColumns; ++c) {
        const long long d = seat_values[r][c] - seat_values[r - 1][c];
        if (d == 0) continue;
        if (!deltas.empty()) deltas += ';';
        deltas += abbrs[c];
        deltas += (d > 0 ? ":+" : ":-") + std::to_string(std::llabs(d));
      }
    events.push_back(starts[r] + ",window," + deltas);
  }
  return {join(kept), join(events)};
}

SenateDataset load_restricted(size_t first, size_t last) {
  const auto r = restrict_bundled(first, last);
  return SenateDataset::load_strings(r.seats, bundled_parties_csv(), r.events, true);
}

Errc load_code(std::string_view seats, std::string_view parties, std::string_view events,
               bool strict = false) {
  try {
    SenateDataset::load_strings(seats, parties, events, strict);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::ParseError;
}

const CorrelationResult& find_pair(const std::vector<PairCorrelation>& pairs,
                                   std::string_view a, std::string_view b) {
  for (const auto& pc : pairs)
    if ((pc.a == a && pc.b == b) || (pc.a == b && pc.b == a)) return pc.result;
  FAIL("pair not found: " << std::string(a) << "-" << std::string(b));
  static CorrelationResult dummy;
  return dummy;
}

}  // namespace

TEST_CASE("bundled dataset loads, strictly reconciled") {
  const auto ds = SenateDataset::bundled(true);
  CHECK(ds.warnings().empty());
  CHECK(ds.records().size() == 36);
  CHECK(ds.events().size() == 36);
  CHECK(ds.columns().size() == 16);

  CHECK(ds.records().front().total == 47);
  CHECK(ds.records().front().label() == "03/90-11/90");
  CHECK(ds.records().back().label() == "11/17-12/17");

  // observed totals of the seat table
  std::set<long long> totals;
  for (const auto& rec : ds.records()) totals.insert(rec.total);
  CHECK(totals == std::set<long long>{36, 37, 38, 46, 47, 48, 49});

  // canonical column order and coalition mapping
  const char* expected_abbrs[] = {"MAS", "PS",  "PRSD", "PPD", "IND_CL", "DC",
                                  "IND_C", "DRP", "SA",  "AMP", "CH1",   "PRI",
                                  "UCC",   "IND_R", "RN", "UDI"};
  for (int c = 0; c < kPartyColumns; ++c) {
    CHECK(ds.columns()[static_cast<size_t>(c)].abbr == expected_abbrs[c]);
    CHECK(ds.columns()[static_cast<size_t>(c)].spectrum_order == c + 1);
  }
  for (int c = 0; c <= 5; ++c)
    CHECK(ds.columns()[static_cast<size_t>(c)].coalition == Bloc::Concertacion);
  for (int c = 6; c <= 9; ++c)
    CHECK(ds.columns()[static_cast<size_t>(c)].coalition == Bloc::OutOfPact);
  for (int c = 10; c <= 15; ++c)
    CHECK(ds.columns()[static_cast<size_t>(c)].coalition == Bloc::Alianza);

  const auto& second_period = ds.records()[static_cast<size_t>(ds.find_subperiod("03/94-03/98"))];
  CHECK(second_period.seats ==
        std::array<long long, 16>{0, 5, 1, 2, 0, 13, 2, 0, 0, 0, 0, 0, 1, 7, 12, 3});
  CHECK(second_period.total == 46);
  CHECK(second_period.legislative_period == 2);
}

TEST_CASE("subperiod and party lookup") {
  const auto ds = SenateDataset::bundled();
  CHECK(ds.find_subperiod("03/06-11/06") == 17);
  CHECK(ds.find_subperiod("2006-03") == 17);
  CHECK(ds.find_party("DC") == 5);
  CHECK(ds.find_party("UDI") == 15);
  CHECK_THROWS_AS(ds.find_subperiod("01/01-02/02"), Error);
  CHECK_THROWS_AS(ds.find_party("PC"), Error);
}

TEST_CASE("party and coalition games") {
  const auto ds = SenateDataset::bundled();

  const auto g = ds.party_game(ds.find_subperiod("03/06-11/06"), LawType::QualifiedQuorum1of2);
  CHECK(g.literal() == "20;0,8,3,3,0,6,1,0,0,0,0,0,0,0,8,9");
  CHECK(g.label_of(5) == "DC");

  const auto first = ds.party_game(ds.find_subperiod("03/90-11/90"),
                                   LawType::ConstitutionalReform2of3);
  CHECK(first.quota() == 32);
  CHECK(first.total_weight() == 47);

  const auto last = ds.party_game(ds.find_subperiod("11/17-12/17"),
                                  LawType::QualifiedQuorum1of2);
  CHECK(last.literal() == "19;1,5,1,6,1,7,0,1,0,2,0,0,0,0,6,6");

  CHECK(ds.bloc_weights(ds.find_subperiod("03/90-11/90")) ==
        std::array<long long, 3>{22, 3, 22});
  CHECK(ds.bloc_weights(ds.find_subperiod("03/94-03/98")) ==
        std::array<long long, 3>{21, 2, 23});
  CHECK(ds.bloc_weights(ds.find_subperiod("10/14-07/16")) ==
        std::array<long long, 3>{21, 3, 14});

  SUBCASE("coalition weights sum to the record total; quotas match the party game") {
    for (int r = 0; r < 36; ++r) {
      const auto blocs = ds.bloc_weights(r);
      CHECK(blocs[0] + blocs[1] + blocs[2] == ds.records()[static_cast<size_t>(r)].total);
      for (LawType law : kAllLaws)
        CHECK(ds.coalition_game(r, law).quota() == ds.party_game(r, law).quota());
    }
  }
}

TEST_CASE("all_games enumerates 288 instances") {
  const auto ds = SenateDataset::bundled();
  const auto games = ds.all_games();
  CHECK(games.size() == 288);
  size_t party = 0, coalition = 0;
  for (const auto& g : games) (g.level == Level::Party ? party : coalition) += 1;
  CHECK(party == 144);
  CHECK(coalition == 144);

  // a dataset restricted to one subperiod yields 4 quotas x 2 levels
  CHECK(load_restricted(1, 1).all_games().size() == 8);
}

TEST_CASE("timelines") {
  const auto ds = SenateDataset::bundled();

  SUBCASE("coalition balance at the 2/3 quota, entrywise") {
    const auto series =
        ds.timeline(IndexKind::ShapleyShubik, LawType::ConstitutionalReform2of3,
                    Level::Coalition);
    REQUIRE(series.size() == 3);
    CHECK(series[0].label == "Concertacion");
    CHECK(series[2].label == "Alianza");
    REQUIRE(series[0].values.size() == 36);
    for (size_t r = 0; r < 36; ++r) CHECK(series[0].values[r] == series[2].values[r]);
  }

  SUBCASE("a party with no seats has no power") {
    const auto series =
        ds.timeline(IndexKind::ShapleyShubik, LawType::QualifiedQuorum1of2, Level::Party);
    REQUIRE(series.size() == 16);
    CHECK(series[0].label == "MAS");
    const size_t first_mas_row = static_cast<size_t>(ds.find_subperiod("11/08-01/09"));
    for (size_t r = 0; r < first_mas_row; ++r) CHECK(series[0].values[r] == 0.0);
  }

  SUBCASE("the 2014 Deegan-Packel drop for DC at the matching quota") {
    const auto series =
        ds.timeline(IndexKind::DeeganPackel, LawType::QualifiedQuorum1of2, Level::Party);
    const auto& dc = series[static_cast<size_t>(ds.find_party("DC"))];
    const size_t before = static_cast<size_t>(ds.find_subperiod("03/14-10/14"));
    const size_t after = static_cast<size_t>(ds.find_subperiod("10/14-07/16"));
    CHECK(std::abs(dc.values[before] - 0.184) <= 0.0005);
    CHECK(std::abs(dc.values[after] - 0.156) <= 0.0005);
  }
}

TEST_CASE("DC ranks strictly above UDI in the 03/14-10/14 Deegan-Packel vector") {
  const auto ds = SenateDataset::bundled();
  const auto pv = deegan_packel(
      ds.party_game(ds.find_subperiod("03/14-10/14"), LawType::QualifiedQuorum1of2));
  const auto ranking = rank_players(pv);
  const auto group_of = [&](int voter) {
    for (size_t g = 0; g < ranking.groups.size(); ++g)
      for (int member : ranking.groups[g])
        if (member == voter) return g;
    FAIL("voter missing from ranking");
    return size_t{0};
  };
  CHECK(group_of(ds.find_party("DC")) < group_of(ds.find_party("UDI")));
}

TEST_CASE("party correlations reproduce the headline pairs") {
  const auto ds = SenateDataset::bundled();

  const auto reform23 = ds.correlate_parties(IndexKind::ShapleyShubik,
                                             LawType::ConstitutionalReform2of3,
                                             CorrelationMethod::Kendall);
  CHECK(reform23.size() == 120);
  const auto& drp_amp = find_pair(reform23, "DRP", "AMP");
  CHECK(drp_amp.coefficient >= 0.6);
  CHECK(drp_amp.significant);
  CHECK((*drp_amp.level == CorrelationLevel::High ||
         *drp_amp.level == CorrelationLevel::VeryHigh));

  const auto qualified = ds.correlate_parties(IndexKind::ShapleyShubik,
                                              LawType::QualifiedQuorum1of2,
                                              CorrelationMethod::Kendall);
  const auto& ps_dc = find_pair(qualified, "PS", "DC");
  CHECK(ps_dc.coefficient <= -0.6);
  CHECK((*ps_dc.level == CorrelationLevel::HighInverse ||
         *ps_dc.level == CorrelationLevel::VeryHighInverse));

  const auto& ps_ind_r = find_pair(qualified, "PS", "IND_R");
  CHECK((*ps_ind_r.level == CorrelationLevel::HighInverse ||
         *ps_ind_r.level == CorrelationLevel::VeryHighInverse));

  const auto reform35 = ds.correlate_parties(IndexKind::ShapleyShubik,
                                             LawType::ConstitutionalInterpretation3of5,
                                             CorrelationMethod::Kendall);
  const auto& dc_ind_r = find_pair(reform35, "DC", "IND_R");
  CHECK((*dc_ind_r.level == CorrelationLevel::High ||
         *dc_ind_r.level == CorrelationLevel::VeryHigh));
}

TEST_CASE("quorum correlations per party") {
  const auto ds = SenateDataset::bundled();

  const auto dc = ds.correlate_quorums(IndexKind::ShapleyShubik, "DC",
                                       CorrelationMethod::Kendall);
  CHECK(dc.size() == 6);
  for (const auto& pc : dc) {
    CHECK(!pc.result.zero_variance);
    CHECK((*pc.result.level == CorrelationLevel::High ||
           *pc.result.level == CorrelationLevel::VeryHigh));
  }

  const auto prsd = ds.correlate_quorums(IndexKind::ShapleyShubik, "PRSD",
                                         CorrelationMethod::Kendall);
  CHECK(std::any_of(prsd.begin(), prsd.end(), [](const PairCorrelation& pc) {
    return pc.result.coefficient < 0.6;
  }));

  // UDI's quorum pairs do not all sit in the plain "high" bracket
  const auto udi = ds.correlate_quorums(IndexKind::ShapleyShubik, "UDI",
                                        CorrelationMethod::Kendall);
  CHECK(std::any_of(udi.begin(), udi.end(), [](const PairCorrelation& pc) {
    return *pc.result.level != CorrelationLevel::High;
  }));
}

TEST_CASE("a constant-zero party flags zero variance") {
  // from 03/02 on, UCC holds no seats, so its series is constant zero
  const auto post2002 = load_restricted(12, 36);
  CHECK(post2002.records().size() == 25);
  const auto pairs = post2002.correlate_parties(
      IndexKind::ShapleyShubik, LawType::QualifiedQuorum1of2, CorrelationMethod::Kendall);
  const auto& ucc_dc = find_pair(pairs, "UCC", "DC");
  CHECK(ucc_dc.zero_variance);
  CHECK(!ucc_dc.significant);

  const auto quorums = post2002.correlate_quorums(IndexKind::ShapleyShubik, "UCC",
                                                  CorrelationMethod::Kendall);
  for (const auto& pc : quorums) CHECK(pc.result.zero_variance);
}

TEST_CASE("loader rejects structural violations") {
  const std::string parties{bundled_parties_csv()};
  const std::string events = "start,reason,deltas\n1990-03,begin,\n";
  const auto seats_header = lines_of(bundled_seats_csv())[0];

  // wrong header
  CHECK(load_code("start,end,total\n", parties, events) == Errc::ParseError);

  // row total disagrees with the seat sum
  const std::string bad_total =
      seats_header + "\n1990-03,1990-11,1,0,1,4,4,0,13,3,0,0,0,0,0,0,4,14,4,46\n";
  CHECK(load_code(bad_total, parties, events) == Errc::TotalMismatch);

  const std::string row1 = "1990-03,1990-11,1,0,1,4,4,0,13,3,0,0,0,0,0,0,4,14,4,47\n";

  // overlapping subperiods
  const std::string overlap = seats_header + "\n" + row1 +
                              "1990-10,1991-04,1,0,4,4,1,0,13,3,0,0,0,0,0,0,3,14,4,46\n";
  CHECK(load_code(overlap, parties, events) == Errc::ChronologyError);

  // end before start
  const std::string backwards =
      seats_header + "\n1990-11,1990-03,1,0,1,4,4,0,13,3,0,0,0,0,0,0,4,14,4,47\n";
  CHECK(load_code(backwards, parties, events) == Errc::ChronologyError);

  // identical consecutive rows
  const std::string identical = seats_header + "\n" + row1 +
                                "1990-11,1991-04,1,0,1,4,4,0,13,3,0,0,0,0,0,0,4,14,4,47\n";
  CHECK(load_code(identical, parties, events) == Errc::ChronologyError);

  // malformed numbers and dates
  CHECK(load_code(seats_header + "\n1990-03,1990-11,1,0,x,4,4,0,13,3,0,0,0,0,0,0,4,14,4,47\n",
                  parties, events) == Errc::ParseError);
  CHECK(load_code(seats_header + "\n90/03,1990-11,1,0,1,4,4,0,13,3,0,0,0,0,0,0,4,14,4,47\n",
                  parties, events) == Errc::ParseError);

  const std::string seats = seats_header + "\n" + row1;

  // events: malformed delta token / unknown party
  CHECK(load_code(seats, parties, "start,reason,deltas\n1990-03,begin,DC+1\n") ==
        Errc::ParseError);
  CHECK(load_code(seats, parties, "start,reason,deltas\n1990-03,begin,PC:+1\n") ==
        Errc::ParseError);

  // events disagreeing with the seat table: warning by default, error when strict
  const std::string drift = "start,reason,deltas\n1990-03,begin,DC:+1\n";
  const auto ds = SenateDataset::load_strings(seats, parties, drift, false);
  CHECK(!ds.warnings().empty());
  CHECK(load_code(seats, parties, drift, true) == Errc::EventMismatch);
}

TEST_CASE("events reconcile consecutive seat rows") {
  const auto ds = SenateDataset::bundled(true);
  // spot-check one annotated transition: 11/90 moves three PPD seats to PS
  const auto& ev = ds.events()[1];
  CHECK(ev.start.str() == "1990-11");
  long long ps = 0, ppd = 0, ind_r = 0;
  for (const auto& [abbr, delta] : ev.deltas) {
    if (abbr == "PS") ps = delta;
    if (abbr == "PPD") ppd = delta;
    if (abbr == "IND_R") ind_r = delta;
  }
  CHECK(ps == 3);
  CHECK(ppd == -3);
  CHECK(ind_r == -1);
}

#include "votepower/reproduce.hpp"

#include <cstdio>
#include <functional>
#include <nlohmann/json.hpp>

#include "votepower/errors.hpp"

namespace votepower {

std::string_view outcome_name(ClaimOutcome outcome) noexcept {
  switch (outcome) {
    case ClaimOutcome::Pass: return "pass";
    case ClaimOutcome::Fail: return "fail";
    case ClaimOutcome::Indeterminate: return "indeterminate";
  }
  return "?";
}

namespace {

struct Verdict {
  ClaimOutcome outcome;
  std::string actual;
};

// |value - reference| <= 1/2000, i.e. the value rounds to the reference's
// three printed decimals (up to the half-way boundary), checked exactly.
bool within_half_milli(const Rational& value, const Rational& reference) {
  const Rational diff = value - reference;
  return diff <= Rational(1, 2000) && diff >= Rational(-1, 2000);
}

std::string decimals3(const Rational& v) { return to_decimal_string(v, 3); }

// claims quantified over the whole seat table are not evaluable on a
// partial dataset
void require_full_table(const SenateDataset& ds) {
  if (ds.records().size() != 36)
    raise(Errc::UnknownSubperiod, "dataset has " + std::to_string(ds.records().size()) +
                                      " subperiods, the claim covers all 36");
}

Verdict check_quota_table(const SenateDataset&) {
  const std::array<long long, 4> expected = {26, 23, 22, 20};
  std::array<long long, 4> actual{};
  for (size_t l = 0; l < kAllLaws.size(); ++l) actual[l] = quota_for(kAllLaws[l], 38);
  std::string rendered;
  for (size_t l = 0; l < 4; ++l) {
    if (l) rendered += ",";
    rendered += std::to_string(actual[l]);
  }
  return {actual == expected ? ClaimOutcome::Pass : ClaimOutcome::Fail, rendered};
}

Verdict check_toy_symmetry(const SenateDataset&) {
  const WeightedVotingGame game(20, {18, 10, 10});
  const PowerVector pv = shapley_shubik(game);
  const Rational third(1, 3);
  const bool ok =
      pv.values.size() == 3 && pv.values[0] == third && pv.values[1] == third && pv.values[2] == third;
  std::string rendered;
  for (const auto& v : pv.values) {
    if (!rendered.empty()) rendered += ",";
    rendered += to_fraction_string(v);
  }
  return {ok ? ClaimOutcome::Pass : ClaimOutcome::Fail, rendered};
}

Verdict check_dp_shift(const SenateDataset& ds) {
  const int before = ds.find_subperiod("03/14-10/14");
  const int after = ds.find_subperiod("10/14-07/16");
  const int dc = ds.find_party("DC");
  const int udi = ds.find_party("UDI");
  const Rational dc_before(184, 1000), udi_before(90, 1000);
  const Rational dc_after(156, 1000), udi_after(65, 1000);
  for (LawType law : kAllLaws) {
    const PowerVector pv1 = deegan_packel(ds.party_game(before, law));
    const PowerVector pv2 = deegan_packel(ds.party_game(after, law));
    if (within_half_milli(pv1.values[static_cast<size_t>(dc)], dc_before) &&
        within_half_milli(pv1.values[static_cast<size_t>(udi)], udi_before) &&
        within_half_milli(pv2.values[static_cast<size_t>(dc)], dc_after) &&
        within_half_milli(pv2.values[static_cast<size_t>(udi)], udi_after)) {
      return {ClaimOutcome::Pass,
              "law=" + std::string(law_id(law)) + " DC " +
                  decimals3(pv1.values[static_cast<size_t>(dc)]) + "->" +
                  decimals3(pv2.values[static_cast<size_t>(dc)]) + " UDI " +
                  decimals3(pv1.values[static_cast<size_t>(udi)]) + "->" +
                  decimals3(pv2.values[static_cast<size_t>(udi)])};
    }
  }
  return {ClaimOutcome::Fail, "no law type matches all four reference values"};
}

Verdict check_coalition_balance(const SenateDataset& ds) {
  require_full_table(ds);
  for (int r = 0; r < static_cast<int>(ds.records().size()); ++r) {
    const PowerVector pv =
        shapley_shubik(ds.coalition_game(r, LawType::ConstitutionalReform2of3));
    if (pv.values[0] != pv.values[2])
      return {ClaimOutcome::Fail,
              "subperiod " + ds.records()[static_cast<size_t>(r)].label() + ": " +
                  to_fraction_string(pv.values[0]) + " vs " + to_fraction_string(pv.values[2])};
  }
  return {ClaimOutcome::Pass,
          "equal in all " + std::to_string(ds.records().size()) + " subperiods"};
}

Verdict check_qualified_reversal(const SenateDataset& ds) {
  const int r = ds.find_subperiod("03/94-03/98");
  const PowerVector pv = shapley_shubik(ds.coalition_game(r, LawType::QualifiedQuorum1of2));
  const bool expected_vector = pv.values[0] == Rational(1, 6) &&
                               pv.values[1] == Rational(1, 6) &&
                               pv.values[2] == Rational(2, 3);
  const bool reversal = pv.values[2] > pv.values[0] + pv.values[1];
  std::string rendered;
  for (const auto& v : pv.values) {
    if (!rendered.empty()) rendered += ",";
    rendered += to_fraction_string(v);
  }
  return {expected_vector && reversal ? ClaimOutcome::Pass : ClaimOutcome::Fail, rendered};
}

Verdict check_cardinalities(const SenateDataset& ds) {
  require_full_table(ds);
  const auto games = ds.all_games();
  size_t party = 0, coalition = 0, vectors = 0;
  for (const auto& g : games) {
    (g.level == Level::Party ? party : coalition) += 1;
    // the two primary indices per game
    vectors += shapley_shubik(g.game).values.empty() ? 0 : 1;
    vectors += deegan_packel(g.game).values.empty() ? 0 : 1;
  }
  const bool ok = party == 144 && coalition == 144 && vectors == 576;
  return {ok ? ClaimOutcome::Pass : ClaimOutcome::Fail,
          std::to_string(party) + " party + " + std::to_string(coalition) +
              " coalition games, " + std::to_string(vectors) + " index vectors"};
}

Verdict check_kendall_pair(const SenateDataset& ds, const char* a, const char* b,
                           bool inverse) {
  require_full_table(ds);
  const int ia = ds.find_party(a);
  const int ib = ds.find_party(b);
  std::string best_law;
  double best = inverse ? 1.0 : -1.0;
  for (LawType law : kAllLaws) {
    const auto series = ds.timeline(IndexKind::ShapleyShubik, law, Level::Party);
    const auto r = kendall(series[static_cast<size_t>(ia)], series[static_cast<size_t>(ib)]);
    if (r.zero_variance) continue;
    if ((inverse && r.coefficient < best) || (!inverse && r.coefficient > best)) {
      best = r.coefficient;
      best_law = law_id(law);
    }
  }
  const bool ok = inverse ? best <= -0.6 : best >= 0.6;
  char buf[64];
  std::snprintf(buf, sizeof buf, "tau=%.3f under %s", best, best_law.c_str());
  // approximate reproduction: a miss is indeterminate, not a failure
  return {ok ? ClaimOutcome::Pass : ClaimOutcome::Indeterminate, buf};
}

struct ClaimSpec {
  const char* id;
  const char* description;
  const char* expected;
  const char* rule;
  std::function<Verdict(const SenateDataset&)> evaluate;
};

const std::vector<ClaimSpec>& claim_specs() {
  static const std::vector<ClaimSpec> specs = {
      {"quota-table-38",
       "Quotas for 38 seats in exercise under the four law types",
       "26,23,22,20", "exact integer match",
       check_quota_table},
      {"toy-game-symmetry",
       "Shapley-Shubik of [20;18,10,10]: three parties, equal power",
       "1/3,1/3,1/3", "exact rational match",
       check_toy_symmetry},
      {"dp-shift-2014",
       "Deegan-Packel drop across the 10/2014 boundary for DC and UDI under "
       "some law type (recorded in `actual`)",
       "DC 0.184->0.156, UDI 0.090->0.065", "abs tol 0.0005 (3-decimal rounding)",
       check_dp_shift},
      {"coalition-balance-2of3",
       "Concertacion and Alianza have identical Shapley-Shubik power at the "
       "2/3 quota in every subperiod",
       "SS(Concertacion) == SS(Alianza), all subperiods", "exact rational match",
       check_coalition_balance},
      {"qualified-reversal-1994",
       "Coalition-level Shapley-Shubik at the 1/2 quota in 03/94-03/98: the "
       "Alianza outweighs the other two players combined",
       "1/6,1/6,2/3 and SS(Alianza) > SS(Concertacion)+SS(OutOfPact)",
       "exact rational match", check_qualified_reversal},
      {"game-cardinalities",
       "144 party-level plus 144 coalition-level games; the two primary "
       "indices yield 576 power vectors",
       "144+144 games, 576 vectors", "exact counts",
       check_cardinalities},
      {"kendall-drp-amplitud",
       "Kendall correlation of the DRP and Amplitud Shapley-Shubik series "
       "reaches the high bracket under at least one law type",
       "tau >= 0.6", "threshold (approximate reproduction)",
       [](const SenateDataset& ds) { return check_kendall_pair(ds, "DRP", "AMP", false); }},
      {"kendall-ps-dc-inverse",
       "Kendall correlation of the PS and DC Shapley-Shubik series reaches "
       "the high inverse bracket under at least one law type",
       "tau <= -0.6", "threshold (approximate reproduction)",
       [](const SenateDataset& ds) { return check_kendall_pair(ds, "PS", "DC", true); }},
  };
  return specs;
}

}  // namespace

std::vector<ReproductionClaim> evaluate_claims(const SenateDataset& dataset) {
  std::vector<ReproductionClaim> results;
  results.reserve(claim_specs().size());
  for (const auto& spec : claim_specs()) {
    ReproductionClaim claim;
    claim.claim_id = spec.id;
    claim.description = spec.description;
    claim.expected = spec.expected;
    claim.rule = spec.rule;
    try {
      const Verdict v = spec.evaluate(dataset);
      claim.outcome = v.outcome;
      claim.actual = v.actual;
    } catch (const Error& e) {
      claim.outcome = ClaimOutcome::Indeterminate;
      claim.actual = std::string("not evaluable: ") + e.what();
    }
    results.push_back(std::move(claim));
  }
  return results;
}

std::string claims_to_json(const std::vector<ReproductionClaim>& claims) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : claims) {
    nlohmann::ordered_json j;
    j["claim_id"] = c.claim_id;
    j["description"] = c.description;
    j["expected"] = c.expected;
    j["actual"] = c.actual;
    j["rule"] = c.rule;
    j["outcome"] = std::string(outcome_name(c.outcome));
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

int claims_exit_code(const std::vector<ReproductionClaim>& claims) {
  bool any_fail = false, any_indeterminate = false;
  for (const auto& c : claims) {
    any_fail |= c.outcome == ClaimOutcome::Fail;
    any_indeterminate |= c.outcome == ClaimOutcome::Indeterminate;
  }
  if (any_fail) return 5;
  if (any_indeterminate) return 6;
  return 0;
}

}  // namespace votepower

#pragma once

#include <string>
#include <vector>

#include "votepower/senate.hpp"

namespace votepower {

enum class ClaimOutcome { Pass, Fail, Indeterminate };

std::string_view outcome_name(ClaimOutcome outcome) noexcept;

/// One reference-value check evaluated against a dataset. `expected` states
/// the reference values, `rule` the comparison rule (exact or a stated
/// tolerance), `actual` what the evaluation produced. Indeterminate means
/// the claim could not be evaluated on the given dataset (e.g. a missing
/// subperiod), as opposed to a value mismatch.
struct ReproductionClaim {
  std::string claim_id;
  std::string description;
  std::string expected;
  std::string actual;
  std::string rule;
  ClaimOutcome outcome = ClaimOutcome::Indeterminate;
};

/// Evaluates the embedded claim set. Claims never throw; evaluation
/// failures surface as Indeterminate outcomes.
std::vector<ReproductionClaim> evaluate_claims(const SenateDataset& dataset);

/// JSON array of {claim_id, description, expected, actual, rule, outcome}.
std::string claims_to_json(const std::vector<ReproductionClaim>& claims);

/// 0 when all claims pass, 5 when any fails, 6 when any is indeterminate
/// (and none fails).
int claims_exit_code(const std::vector<ReproductionClaim>& claims);

}  // namespace votepower

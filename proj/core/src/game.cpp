#include "votepower/game.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <numeric>

#include "votepower/errors.hpp"

namespace votepower {

LawFraction law_fraction(LawType law) noexcept {
  switch (law) {
    case LawType::ConstitutionalReform2of3: return {2, 3};
    case LawType::ConstitutionalInterpretation3of5: return {3, 5};
    case LawType::ConstitutionalOrganic4of7: return {4, 7};
    case LawType::QualifiedQuorum1of2: return {1, 2};
  }
  return {0, 1};
}

std::string_view law_id(LawType law) noexcept {
  switch (law) {
    case LawType::ConstitutionalReform2of3: return "reform23";
    case LawType::ConstitutionalInterpretation3of5: return "reform35";
    case LawType::ConstitutionalOrganic4of7: return "organic";
    case LawType::QualifiedQuorum1of2: return "qualified";
  }
  return "?";
}

std::string_view law_description(LawType law) noexcept {
  switch (law) {
    case LawType::ConstitutionalReform2of3:
      return "constitutional reform (2/3)";
    case LawType::ConstitutionalInterpretation3of5:
      return "constitutional reform or interpretation (3/5)";
    case LawType::ConstitutionalOrganic4of7:
      return "constitutional organic (4/7)";
    case LawType::QualifiedQuorum1of2:
      return "qualified quorum (absolute majority)";
  }
  return "?";
}

LawType parse_law(std::string_view name) {
  if (name == "reform23") return LawType::ConstitutionalReform2of3;
  if (name == "reform35" || name == "interpretation")
    return LawType::ConstitutionalInterpretation3of5;
  if (name == "organic") return LawType::ConstitutionalOrganic4of7;
  if (name == "qualified") return LawType::QualifiedQuorum1of2;
  raise(Errc::ParseError,
        "unknown law type '" + std::string(name) +
            "' (expected reform23, reform35, interpretation, organic or qualified)");
}

long long quota_for(LawType law, long long seats_in_exercise) {
  if (seats_in_exercise < 1)
    raise(Errc::NonPositiveSeats,
          "seats in exercise must be >= 1, got " + std::to_string(seats_in_exercise));
  const auto [num, den] = law_fraction(law);
  return (num * seats_in_exercise) / den + 1;
}

Coalition Coalition::of(std::initializer_list<int> members) {
  std::uint64_t bits = 0;
  for (int m : members) {
    if (m < 0 || m >= kMaxVoters)
      raise(Errc::InvalidMember, "voter position " + std::to_string(m));
    bits |= 1ull << m;
  }
  return Coalition(bits);
}

Coalition Coalition::full(int voter_count) {
  if (voter_count >= kMaxVoters) return Coalition(~0ull);
  return Coalition((1ull << voter_count) - 1);
}

int Coalition::size() const { return std::popcount(bits_); }

std::vector<int> Coalition::members() const {
  std::vector<int> out;
  out.reserve(static_cast<size_t>(size()));
  for (std::uint64_t b = bits_; b != 0; b &= b - 1)
    out.push_back(std::countr_zero(b));
  return out;
}

WeightedVotingGame::WeightedVotingGame(long long quota,
                                       std::vector<long long> weights,
                                       std::vector<std::string> labels)
    : quota_(quota), weights_(std::move(weights)), labels_(std::move(labels)) {
  if (weights_.empty()) raise(Errc::EmptyGame, "a game needs at least one voter");
  if (weights_.size() > static_cast<size_t>(kMaxVoters))
    raise(Errc::TooManyVoters, std::to_string(weights_.size()) + " voters exceed the cap of " +
                                   std::to_string(kMaxVoters));
  for (long long w : weights_)
    if (w < 0) raise(Errc::NegativeWeight, "weight " + std::to_string(w));
  total_ = std::accumulate(weights_.begin(), weights_.end(), 0ll);
  if (quota_ < 1)
    raise(Errc::QuotaNonPositive, "quota must be >= 1, got " + std::to_string(quota_));
  if (quota_ > total_)
    raise(Errc::QuotaExceedsTotal, "quota " + std::to_string(quota_) +
                                       " exceeds the total weight " + std::to_string(total_));
  if (!labels_.empty() && labels_.size() != weights_.size())
    raise(Errc::LabelMismatch, std::to_string(labels_.size()) + " labels for " +
                                   std::to_string(weights_.size()) + " voters");
}

namespace {

long long parse_ll(std::string_view token, std::string_view literal) {
  // trim whitespace; the grammar attaches no significance to it
  while (!token.empty() && std::isspace(static_cast<unsigned char>(token.front())))
    token.remove_prefix(1);
  while (!token.empty() && std::isspace(static_cast<unsigned char>(token.back())))
    token.remove_suffix(1);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    raise(Errc::ParseError, "bad number '" + std::string(token) + "' in game literal '" +
                                std::string(literal) + "'");
  return value;
}

}  // namespace

WeightedVotingGame WeightedVotingGame::parse(std::string_view literal,
                                             std::vector<std::string> labels) {
  const auto semi = literal.find(';');
  if (semi == std::string_view::npos)
    raise(Errc::ParseError,
          "game literal '" + std::string(literal) + "' lacks the 'quota;weights' separator");
  const long long quota = parse_ll(literal.substr(0, semi), literal);
  std::vector<long long> weights;
  std::string_view rest = literal.substr(semi + 1);
  while (true) {
    const auto comma = rest.find(',');
    weights.push_back(parse_ll(rest.substr(0, comma), literal));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return WeightedVotingGame(quota, std::move(weights), std::move(labels));
}

std::string WeightedVotingGame::label_of(int voter) const {
  if (!labels_.empty()) return labels_[static_cast<size_t>(voter)];
  return "v" + std::to_string(voter);
}

void WeightedVotingGame::check_member(Coalition c) const {
  const int n = num_voters();
  if (n < kMaxVoters && (c.bits() >> n) != 0)
    raise(Errc::InvalidMember,
          "coalition references voters beyond position " + std::to_string(n - 1));
}

long long WeightedVotingGame::coalition_weight(Coalition c) const {
  check_member(c);
  long long sum = 0;
  for (std::uint64_t b = c.bits(); b != 0; b &= b - 1)
    sum += weights_[static_cast<size_t>(std::countr_zero(b))];
  return sum;
}

std::string WeightedVotingGame::literal() const {
  std::string out = std::to_string(quota_);
  out += ';';
  for (size_t i = 0; i < weights_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(weights_[i]);
  }
  return out;
}

}  // namespace votepower

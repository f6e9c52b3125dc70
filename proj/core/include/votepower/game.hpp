#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace votepower {

/// Coalitions are machine-word bit sets, which caps games at 64 voters.
inline constexpr int kMaxVoters = 64;

/// The four quota rules applied to laws voted by parliamentarians in
/// exercise: constitutional reform (2/3 or 3/5 depending on the chapter),
/// constitutional interpretation (3/5), constitutional organic (4/7) and
/// qualified quorum (absolute majority).
enum class LawType {
  ConstitutionalReform2of3,
  ConstitutionalInterpretation3of5,
  ConstitutionalOrganic4of7,
  QualifiedQuorum1of2,
};

inline constexpr std::array<LawType, 4> kAllLaws = {
    LawType::ConstitutionalReform2of3,
    LawType::ConstitutionalInterpretation3of5,
    LawType::ConstitutionalOrganic4of7,
    LawType::QualifiedQuorum1of2,
};

struct LawFraction {
  long long num;
  long long den;
};

LawFraction law_fraction(LawType law) noexcept;

/// Canonical short identifier: "reform23", "reform35", "organic", "qualified".
std::string_view law_id(LawType law) noexcept;

/// Human-readable description, e.g. "constitutional organic (4/7)".
std::string_view law_description(LawType law) noexcept;

/// Accepts the canonical ids plus the alias "interpretation" (same quota as
/// reform35). Throws Errc::ParseError for anything else.
LawType parse_law(std::string_view name);

/// Quota for `seats_in_exercise` seats: floor(num*seats/den) + 1. The formula
/// is applied verbatim even when the fraction divides the seat count exactly
/// (2/3 of 36 yields 25, not 24). Throws Errc::NonPositiveSeats.
long long quota_for(LawType law, long long seats_in_exercise);

/// A subset of voter positions, stored as a bit set (voter i <-> bit i).
class Coalition {
 public:
  constexpr Coalition() = default;
  constexpr explicit Coalition(std::uint64_t bits) : bits_(bits) {}

  static Coalition of(std::initializer_list<int> members);
  static Coalition full(int voter_count);

  constexpr std::uint64_t bits() const { return bits_; }
  bool contains(int voter) const { return (bits_ >> voter) & 1u; }
  int size() const;
  bool empty() const { return bits_ == 0; }

  Coalition with(int voter) const { return Coalition(bits_ | (1ull << voter)); }
  Coalition without(int voter) const { return Coalition(bits_ & ~(1ull << voter)); }
  bool subset_of(Coalition other) const { return (bits_ & ~other.bits_) == 0; }

  std::vector<int> members() const;

  friend auto operator<=>(const Coalition&, const Coalition&) = default;

 private:
  std::uint64_t bits_ = 0;
};

/// A weighted voting game: a quota plus one nonnegative integer weight per
/// voter. Immutable after construction; all invariants are enforced by the
/// constructor (quota >= 1, quota <= total weight, at most 64 voters).
/// Zero-weight voters are legal and retained.
class WeightedVotingGame {
 public:
  WeightedVotingGame(long long quota, std::vector<long long> weights,
                     std::vector<std::string> labels = {});

  /// Parses the text form "q;w1,w2,...,wn" (ASCII decimal, whitespace
  /// ignored). Throws Errc::ParseError on malformed input, then the usual
  /// validation errors.
  static WeightedVotingGame parse(std::string_view literal,
                                  std::vector<std::string> labels = {});

  long long quota() const { return quota_; }
  int num_voters() const { return static_cast<int>(weights_.size()); }
  std::span<const long long> weights() const { return weights_; }
  long long weight_of(int voter) const { return weights_[static_cast<size_t>(voter)]; }
  long long total_weight() const { return total_; }

  /// Empty when the game was built without labels.
  const std::vector<std::string>& labels() const { return labels_; }
  /// The voter's label, or "v<i>" when unlabeled.
  std::string label_of(int voter) const;

  /// Sum of member weights. Throws Errc::InvalidMember if the coalition
  /// references voters outside this game.
  long long coalition_weight(Coalition c) const;

  /// True iff the coalition's weight reaches the quota.
  bool is_winning(Coalition c) const { return coalition_weight(c) >= quota_; }

  Coalition grand_coalition() const { return Coalition::full(num_voters()); }

  /// The "q;w1,...,wn" text form; parse(literal()) reconstructs this game.
  std::string literal() const;

  /// Equality is structural on quota and weights; labels are presentation
  /// metadata and do not participate.
  bool operator==(const WeightedVotingGame& other) const {
    return quota_ == other.quota_ && weights_ == other.weights_;
  }

 private:
  void check_member(Coalition c) const;

  long long quota_ = 0;
  std::vector<long long> weights_;
  std::vector<std::string> labels_;
  long long total_ = 0;
};

}  // namespace votepower

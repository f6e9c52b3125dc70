#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace votepower {

enum class CorrelationMethod { Spearman, Kendall };

std::string_view method_id(CorrelationMethod method) noexcept;  // "spearman"/"kendall"
CorrelationMethod parse_method(std::string_view name);

/// How p-values are obtained. Approximate is the default: a two-sided t
/// approximation for Spearman and a tie-adjusted normal approximation for
/// Kendall. ExactPermutation enumerates all n! pairings (n <= 10) and serves
/// as the oracle for the approximations.
enum class PValueMethod { Approximate, ExactPermutation };

enum class CorrelationLevel {
  VeryHighInverse,
  HighInverse,
  ModerateInverse,
  LowOrVeryLow,
  Moderate,
  High,
  VeryHigh,
};

std::string_view level_label(CorrelationLevel level) noexcept;

/// Bracket classification of a coefficient in [-1,1]. Boundaries are
/// lower-inclusive on the positive side and mirrored on the negative side:
/// c <= -0.8 very high inverse, (-0.8,-0.6] high inverse, (-0.6,-0.4]
/// moderate inverse, (-0.4,0.4) low and very low, [0.4,0.6) moderate,
/// [0.6,0.8) high, [0.8,1] very high. Throws Errc::OutOfRange.
CorrelationLevel classify_correlation(double coefficient);

/// A chronologically ordered sequence of observations for one voter.
struct Series {
  std::string label;
  std::vector<double> values;
};

struct CorrelationResult {
  CorrelationMethod method = CorrelationMethod::Spearman;
  double coefficient = 0.0;  // NaN when zero_variance
  double p_value = 1.0;      // NaN when zero_variance
  bool significant = false;  // p_value < alpha and not zero_variance
  bool zero_variance = false;
  std::optional<CorrelationLevel> level;  // absent when zero_variance
  double alpha = 0.05;
};

/// Mid-ranks, 1-based: tied observations share the average of the positions
/// they occupy.
std::vector<double> rank_with_ties(std::span<const double> values);

/// Spearman's rho: the Pearson correlation of the two mid-rank vectors.
/// A constant series yields a zero_variance result rather than an error.
/// Throws Errc::LengthMismatch / Errc::SeriesTooShort (n >= 3 required).
CorrelationResult spearman(const Series& x, const Series& y, double alpha = 0.05,
                           PValueMethod method = PValueMethod::Approximate);

/// Kendall's tau-b (tie-corrected).
CorrelationResult kendall(const Series& x, const Series& y, double alpha = 0.05,
                          PValueMethod method = PValueMethod::Approximate);

CorrelationResult correlate(CorrelationMethod method, const Series& x, const Series& y,
                            double alpha = 0.05,
                            PValueMethod pvalues = PValueMethod::Approximate);

}  // namespace votepower

#include "votepower/stats.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "votepower/errors.hpp"

namespace votepower {

std::string_view method_id(CorrelationMethod method) noexcept {
  return method == CorrelationMethod::Spearman ? "spearman" : "kendall";
}

CorrelationMethod parse_method(std::string_view name) {
  if (name == "spearman" || name == "rho") return CorrelationMethod::Spearman;
  if (name == "kendall" || name == "tau") return CorrelationMethod::Kendall;
  raise(Errc::ParseError, "unknown correlation method '" + std::string(name) + "'");
}

std::string_view level_label(CorrelationLevel level) noexcept {
  switch (level) {
    case CorrelationLevel::VeryHighInverse: return "very high inverse";
    case CorrelationLevel::HighInverse: return "high inverse";
    case CorrelationLevel::ModerateInverse: return "moderate inverse";
    case CorrelationLevel::LowOrVeryLow: return "low and very low";
    case CorrelationLevel::Moderate: return "moderate";
    case CorrelationLevel::High: return "high";
    case CorrelationLevel::VeryHigh: return "very high";
  }
  return "?";
}

CorrelationLevel classify_correlation(double c) {
  if (std::isnan(c) || c < -1.0 - 1e-9 || c > 1.0 + 1e-9)
    raise(Errc::OutOfRange, "coefficient outside [-1,1]");
  if (c <= -0.8) return CorrelationLevel::VeryHighInverse;
  if (c <= -0.6) return CorrelationLevel::HighInverse;
  if (c <= -0.4) return CorrelationLevel::ModerateInverse;
  if (c < 0.4) return CorrelationLevel::LowOrVeryLow;
  if (c < 0.6) return CorrelationLevel::Moderate;
  if (c < 0.8) return CorrelationLevel::High;
  return CorrelationLevel::VeryHigh;
}

std::vector<double> rank_with_ties(std::span<const double> values) {
  const size_t n = values.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double mid = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = mid;
    i = j + 1;
  }
  return ranks;
}

namespace {

constexpr int kMaxExactObservations = 10;

void check_pair(const Series& x, const Series& y) {
  if (x.values.size() != y.values.size())
    raise(Errc::LengthMismatch, x.label + " has " + std::to_string(x.values.size()) +
                                    " observations, " + y.label + " has " +
                                    std::to_string(y.values.size()));
  if (x.values.size() < 3)
    raise(Errc::SeriesTooShort,
          "need at least 3 observations, got " + std::to_string(x.values.size()));
}

bool is_constant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double d) { return d == v.front(); });
}

CorrelationResult zero_variance_result(CorrelationMethod method, double alpha) {
  CorrelationResult r;
  r.method = method;
  r.coefficient = std::numeric_limits<double>::quiet_NaN();
  r.p_value = std::numeric_limits<double>::quiet_NaN();
  r.significant = false;
  r.zero_variance = true;
  r.level = std::nullopt;
  r.alpha = alpha;
  return r;
}

double pearson(std::span<const double> a, std::span<const double> b) {
  const size_t n = a.size();
  double ma = 0.0, mb = 0.0;
  for (size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    saa += da * da;
    sbb += db * db;
    sab += da * db;
  }
  return sab / std::sqrt(saa * sbb);
}

double clamp_coefficient(double c) { return std::clamp(c, -1.0, 1.0); }

double spearman_coefficient(std::span<const double> xs, std::span<const double> ys) {
  const auto rx = rank_with_ties(xs);
  const auto ry = rank_with_ties(ys);
  return clamp_coefficient(pearson(rx, ry));
}

double spearman_p_approx(double rho, size_t n) {
  if (std::abs(rho) >= 1.0 - 1e-15) return 0.0;
  const double df = static_cast<double>(n) - 2.0;
  const double t = rho * std::sqrt(df / (1.0 - rho * rho));
  const boost::math::students_t dist(df);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

struct KendallStats {
  double s = 0.0;      // concordant minus discordant
  double tau = 0.0;    // tau-b
  bool degenerate = false;
};

std::vector<long long> tie_group_sizes(std::span<const double> v) {
  std::map<double, long long> counts;
  for (double d : v) ++counts[d];
  std::vector<long long> sizes;
  for (const auto& [value, count] : counts)
    if (count > 1) sizes.push_back(count);
  return sizes;
}

KendallStats kendall_statistic(std::span<const double> xs, std::span<const double> ys) {
  const size_t n = xs.size();
  long long concordant = 0, discordant = 0;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const double dx = xs[i] - xs[j];
      const double dy = ys[i] - ys[j];
      const double prod = dx * dy;
      if (prod > 0) ++concordant;
      else if (prod < 0) ++discordant;
    }
  }
  const double n0 = static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 2.0;
  double n1 = 0.0, n2 = 0.0;
  for (long long t : tie_group_sizes(xs)) n1 += static_cast<double>(t) * (t - 1) / 2.0;
  for (long long t : tie_group_sizes(ys)) n2 += static_cast<double>(t) * (t - 1) / 2.0;

  KendallStats st;
  st.s = static_cast<double>(concordant - discordant);
  const double denom = std::sqrt((n0 - n1) * (n0 - n2));
  if (denom == 0.0) {
    st.degenerate = true;
    return st;
  }
  st.tau = clamp_coefficient(st.s / denom);
  return st;
}

// two-sided normal approximation with the tie-adjusted variance of S
double kendall_p_approx(std::span<const double> xs, std::span<const double> ys, double s) {
  const double n = static_cast<double>(xs.size());
  double vt = 0.0, vu = 0.0, t1 = 0.0, u1 = 0.0, t2 = 0.0, u2 = 0.0;
  for (long long t : tie_group_sizes(xs)) {
    const double td = static_cast<double>(t);
    vt += td * (td - 1) * (2 * td + 5);
    t1 += td * (td - 1);
    t2 += td * (td - 1) * (td - 2);
  }
  for (long long u : tie_group_sizes(ys)) {
    const double ud = static_cast<double>(u);
    vu += ud * (ud - 1) * (2 * ud + 5);
    u1 += ud * (ud - 1);
    u2 += ud * (ud - 1) * (ud - 2);
  }
  const double v0 = n * (n - 1) * (2 * n + 5);
  double variance = (v0 - vt - vu) / 18.0 + t1 * u1 / (2.0 * n * (n - 1));
  if (n > 2) variance += t2 * u2 / (9.0 * n * (n - 1) * (n - 2));
  if (variance <= 0.0) return 1.0;
  const double z = s / std::sqrt(variance);
  return std::erfc(std::abs(z) / std::sqrt(2.0));
}

/// Exact two-sided permutation p-value: the share of the n! pairings whose
/// statistic is at least as extreme as the observed one.
template <typename Statistic>
double permutation_p_value(std::span<const double> xs, std::vector<double> ys,
                           double observed, Statistic statistic) {
  if (xs.size() > kMaxExactObservations)
    raise(Errc::ExactPValueInfeasible,
          "exact permutation p-values are limited to " +
              std::to_string(kMaxExactObservations) + " observations");
  std::sort(ys.begin(), ys.end());
  const double threshold = std::abs(observed) - 1e-12;
  unsigned long long total = 0, extreme = 0;
  do {
    ++total;
    if (std::abs(statistic(xs, ys)) >= threshold) ++extreme;
  } while (std::next_permutation(ys.begin(), ys.end()));
  return static_cast<double>(extreme) / static_cast<double>(total);
}

}  // namespace

CorrelationResult spearman(const Series& x, const Series& y, double alpha,
                           PValueMethod method) {
  check_pair(x, y);
  if (is_constant(x.values) || is_constant(y.values))
    return zero_variance_result(CorrelationMethod::Spearman, alpha);

  CorrelationResult r;
  r.method = CorrelationMethod::Spearman;
  r.alpha = alpha;
  r.coefficient = spearman_coefficient(x.values, y.values);
  if (method == PValueMethod::ExactPermutation) {
    r.p_value = permutation_p_value(
        x.values, y.values, r.coefficient,
        [](std::span<const double> a, std::span<const double> b) {
          return spearman_coefficient(a, b);
        });
  } else {
    r.p_value = spearman_p_approx(r.coefficient, x.values.size());
  }
  r.significant = r.p_value < alpha;
  r.level = classify_correlation(r.coefficient);
  return r;
}

CorrelationResult kendall(const Series& x, const Series& y, double alpha,
                          PValueMethod method) {
  check_pair(x, y);
  if (is_constant(x.values) || is_constant(y.values))
    return zero_variance_result(CorrelationMethod::Kendall, alpha);

  const KendallStats st = kendall_statistic(x.values, y.values);
  if (st.degenerate) return zero_variance_result(CorrelationMethod::Kendall, alpha);

  CorrelationResult r;
  r.method = CorrelationMethod::Kendall;
  r.alpha = alpha;
  r.coefficient = st.tau;
  if (method == PValueMethod::ExactPermutation) {
    r.p_value = permutation_p_value(
        x.values, y.values, st.tau,
        [](std::span<const double> a, std::span<const double> b) {
          return kendall_statistic(a, b).tau;
        });
  } else {
    r.p_value = kendall_p_approx(x.values, y.values, st.s);
  }
  r.significant = r.p_value < alpha;
  r.level = classify_correlation(r.coefficient);
  return r;
}

CorrelationResult correlate(CorrelationMethod method, const Series& x, const Series& y,
                            double alpha, PValueMethod pvalues) {
  return method == CorrelationMethod::Spearman ? spearman(x, y, alpha, pvalues)
                                               : kendall(x, y, alpha, pvalues);
}

}  // namespace votepower

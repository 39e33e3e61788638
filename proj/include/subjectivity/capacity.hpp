#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <unordered_set>
#include <vector>

#include "subjectivity/kernels.hpp"
#include "subjectivity/risk.hpp"
#include "subjectivity/stats.hpp"

namespace subjectivity {

// A real-valued function family together with the finite beta grid that
// induces its complete set of indicators theta{f - beta}. The grid is
// strictly increasing and should span (at least) the observed value range;
// refining the grid never loses separations, which is the tested safeguard
// for the finite-grid approximation.
template <typename P>
struct IndicatorClass {
  std::vector<std::function<double(const P&)>> functions;
  std::vector<double> beta_grid;
};

std::vector<double> linear_beta_grid(double lo, double hi, std::size_t count = 32);

inline constexpr std::size_t kMaxSeparationPoints = 64;  // pattern key is one 64-bit word

// Number of distinct binary patterns (theta{f(p) - beta})_p over all
// (function, beta) choices. Throws SizeCapError for more than 64 points.
template <typename P>
std::size_t separation_count(const IndicatorClass<P>& cls, std::span<const P> points) {
  if (points.empty()) throw std::invalid_argument("separation_count: no points");
  if (points.size() > kMaxSeparationPoints)
    throw SizeCapError("separation_count: more than 64 points");
  if (cls.functions.empty() || cls.beta_grid.empty())
    throw std::invalid_argument("separation_count: empty indicator class");

  const std::size_t n = points.size();
  std::vector<double> values(n);
  std::unordered_set<std::uint64_t> patterns;
  for (const auto& f : cls.functions) {
    for (std::size_t i = 0; i < n; ++i) values[i] = f(points[i]);
    for (const double beta : cls.beta_grid)
      patterns.insert(kernels::pattern_bits(values.data(), n, beta));
  }
  return patterns.size();
}

struct CapacityReport {
  std::size_t n = 0;
  double mean_count = 0.0;        // E N over the replications
  double annealed_entropy = 0.0;  // ln of the mean count
  double entropy_rate = 0.0;      // annealed_entropy / n
  double ci_low = 0.0;            // 95% bootstrap interval for the entropy
  double ci_high = 0.0;
  std::size_t replications = 0;
};

// Monte Carlo annealed entropy: ln of the mean separation count over
// `reps` draws of n i.i.d. points, with a percentile-bootstrap interval.
template <typename P>
CapacityReport annealed_entropy(const IndicatorClass<P>& cls, std::size_t n,
                                const FiniteDistribution<P>& point_source, std::size_t reps,
                                std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("annealed_entropy: n must be positive");
  if (reps == 0) throw std::invalid_argument("annealed_entropy: reps must be positive");

  std::vector<double> counts(reps);
  std::vector<P> points(n);
  for (std::size_t r = 0; r < reps; ++r) {
    Rng rng = Rng::stream(seed, r);
    for (std::size_t i = 0; i < n; ++i)
      points[i] = point_source.item(point_source.sample_index(rng));
    counts[r] = static_cast<double>(separation_count<P>(cls, points));
  }

  CapacityReport report;
  report.n = n;
  report.replications = reps;
  report.mean_count = mean(counts);
  report.annealed_entropy = std::log(report.mean_count);
  report.entropy_rate = report.annealed_entropy / static_cast<double>(n);
  const Interval ci = bootstrap_mean_interval(counts, 1000, seed ^ 0xb0075742u);
  report.ci_low = std::log(ci.low);
  report.ci_high = std::log(ci.high);
  return report;
}

// Largest n <= max_n such that some n-subset of the pool realizes all 2^n
// patterns; 0 when not even one point is shattered. Exhaustive subset
// search, so max_n is capped at 20.
template <typename P>
std::size_t brute_dimension(const IndicatorClass<P>& cls, std::span<const P> pool,
                            std::size_t max_n) {
  if (max_n > 20) throw SizeCapError("brute_dimension: max_n above 20");
  if (pool.empty()) throw std::invalid_argument("brute_dimension: empty pool");
  max_n = std::min(max_n, pool.size());

  // value matrix once; subsets only gather
  std::vector<std::vector<double>> values(cls.functions.size(),
                                          std::vector<double>(pool.size()));
  for (std::size_t k = 0; k < cls.functions.size(); ++k)
    for (std::size_t i = 0; i < pool.size(); ++i) values[k][i] = cls.functions[k](pool[i]);

  std::vector<double> sub(max_n);
  auto shattered = [&](std::span<const std::size_t> subset) {
    const std::size_t n = subset.size();
    const std::uint64_t want = std::uint64_t{1} << n;
    std::unordered_set<std::uint64_t> seen;
    for (std::size_t k = 0; k < cls.functions.size(); ++k) {
      for (std::size_t i = 0; i < n; ++i) sub[i] = values[k][subset[i]];
      for (const double beta : cls.beta_grid) {
        seen.insert(kernels::pattern_bits(sub.data(), n, beta));
        if (seen.size() == want) return true;
      }
    }
    return false;
  };

  // if no n-subset is shattered, no larger subset can be; grow n until the
  // search fails
  std::size_t dimension = 0;
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::vector<std::size_t> subset(n);
    for (std::size_t i = 0; i < n; ++i) subset[i] = i;
    bool any = false;
    for (;;) {
      if (shattered(subset)) {
        any = true;
        break;
      }
      // next combination
      std::size_t i = n;
      while (i > 0 && subset[i - 1] == pool.size() - n + (i - 1)) --i;
      if (i == 0) break;
      ++subset[i - 1];
      for (std::size_t k = i; k < n; ++k) subset[k] = subset[k - 1] + 1;
    }
    if (!any) break;
    dimension = n;
  }
  return dimension;
}

// h (ln(n/h) + 1); the standard growth-function cap on the annealed
// entropy for n >= h. Throws std::domain_error when n < h.
double growth_bound(std::size_t h, std::size_t n);

// (min, max) of the local risk over all (member, subject) pairs; an
// empirical stand-in for the A_tau/B_tau constants.
std::pair<double, double> empirical_local_risk_range(const FiniteClass<HypothesisPair>& cls,
                                                     const SubjectDist& subjects,
                                                     const DataDist& data,
                                                     const LossSpec& loss);

// Canonical scalar families used by the capacity experiments and the CLI.
IndicatorClass<double> threshold_family(double beta_lo, double beta_hi,
                                        std::size_t grid = 32);
IndicatorClass<double> interval_family(std::span<const double> endpoints,
                                       std::size_t grid = 32);

// Indicator classes of the basic loss (as functions of the sample, under a
// fixed subject) and of the local risk (as functions of the subject). The
// beta grid spans the observed value range over the given evaluation pool.
IndicatorClass<Sample> data_risk_indicators(const FiniteClass<HypothesisPair>& cls,
                                            const SubjectToken& tau, const LossSpec& loss,
                                            std::span<const Sample> value_pool,
                                            std::size_t grid = 32);
IndicatorClass<SubjectToken> subject_risk_indicators(const FiniteClass<HypothesisPair>& cls,
                                                     const DataDist& data,
                                                     const LossSpec& loss,
                                                     std::span<const SubjectToken> value_pool,
                                                     std::size_t grid = 32);

}  // namespace subjectivity

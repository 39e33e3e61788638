#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace subjectivity {

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

// 95% two-sided Wilson score interval for a binomial proportion.
Interval wilson_interval(std::size_t successes, std::size_t trials,
                         double z = 1.959963984540054);

double mean(std::span<const double> values);
double sample_variance(std::span<const double> values);  // unbiased, 0 for n < 2

// Percentile bootstrap interval for the mean (nearest-rank quantiles at
// 2.5% / 97.5%). Constant inputs give a zero-width interval.
Interval bootstrap_mean_interval(std::span<const double> values, std::size_t resamples,
                                 std::uint64_t seed);

}  // namespace subjectivity

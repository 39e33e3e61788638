#include "subjectivity/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "subjectivity/rng.hpp"

namespace subjectivity {

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) throw std::invalid_argument("wilson_interval: zero trials");
  if (successes > trials) throw std::invalid_argument("wilson_interval: successes > trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // the score interval is exact at the boundaries; avoid cancellation dust
  const double low = successes == 0 ? 0.0 : std::max(0.0, center - half);
  const double high = successes == trials ? 1.0 : std::min(1.0, center + half);
  return {low, high};
}

double mean(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("mean: empty input");
  double acc = 0.0;
  for (double v : values) acc += v;
  return acc / static_cast<double>(values.size());
}

double sample_variance(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  const double m = mean(values);
  double acc = 0.0;
  for (double v : values) acc += (v - m) * (v - m);
  return acc / static_cast<double>(n - 1);
}

Interval bootstrap_mean_interval(std::span<const double> values, std::size_t resamples,
                                 std::uint64_t seed) {
  if (values.empty()) throw std::invalid_argument("bootstrap_mean_interval: empty input");
  if (resamples == 0) throw std::invalid_argument("bootstrap_mean_interval: zero resamples");
  const double m = mean(values);
  if (values.size() == 1) return {m, m};

  Rng rng(seed);
  std::vector<double> means(resamples);
  const std::size_t n = values.size();
  for (std::size_t b = 0; b < resamples; ++b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += values[rng.uniform_index(n)];
    means[b] = acc / static_cast<double>(n);
  }
  std::sort(means.begin(), means.end());
  const auto rank = [&](double q) {
    const std::size_t idx =
        static_cast<std::size_t>(q * static_cast<double>(resamples - 1) + 0.5);
    return means[std::min(idx, resamples - 1)];
  };
  return {rank(0.025), rank(0.975)};
}

}  // namespace subjectivity

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "subjectivity/rng.hpp"

namespace subjectivity {

// Finite weighted support. Weights are nonnegative and sum to 1 within
// 1e-12; uniform weights recover the empirical functionals.
template <typename T>
class FiniteDistribution {
 public:
  static FiniteDistribution uniform(std::vector<T> items) {
    if (items.empty()) throw std::invalid_argument("FiniteDistribution: empty support");
    const std::size_t n = items.size();
    const double w = 1.0 / static_cast<double>(n);
    return FiniteDistribution(std::move(items), std::vector<double>(n, w), false);
  }

  static FiniteDistribution weighted(std::vector<T> items, std::vector<double> weights) {
    return FiniteDistribution(std::move(items), std::move(weights), true);
  }

  std::size_t size() const { return items_.size(); }
  const T& item(std::size_t i) const { return items_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<T>& items() const { return items_; }
  const std::vector<double>& weights() const { return weights_; }

  // One draw from the support; inverse-CDF walk over the stored cumulative.
  std::size_t sample_index(Rng& rng) const {
    const double u = rng.uniform01();
    std::size_t lo = 0, hi = cumulative_.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (u < cumulative_[mid]) hi = mid; else lo = mid + 1;
    }
    return lo;
  }

 private:
  FiniteDistribution(std::vector<T> items, std::vector<double> weights, bool validate)
      : items_(std::move(items)), weights_(std::move(weights)) {
    if (items_.empty()) throw std::invalid_argument("FiniteDistribution: empty support");
    if (weights_.size() != items_.size())
      throw std::invalid_argument("FiniteDistribution: weight count mismatch");
    if (validate) {
      double sum = 0.0;
      for (double w : weights_) {
        if (!(w >= 0.0)) throw std::invalid_argument("FiniteDistribution: negative weight");
        sum += w;
      }
      if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("FiniteDistribution: weights must sum to 1");
    }
    cumulative_.resize(weights_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      acc += weights_[i];
      cumulative_[i] = acc;
    }
    cumulative_.back() = 1.0;  // guard the last cell against rounding
  }

  std::vector<T> items_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
};

}  // namespace subjectivity

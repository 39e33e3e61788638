#include "subjectivity/capacity.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace subjectivity {

std::vector<double> linear_beta_grid(double lo, double hi, std::size_t count) {
  if (count < 2) throw std::invalid_argument("linear_beta_grid: need at least 2 points");
  if (!(lo < hi)) throw std::invalid_argument("linear_beta_grid: lo must be < hi");
  std::vector<double> grid(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) grid[i] = lo + step * static_cast<double>(i);
  grid.back() = hi;
  return grid;
}

double growth_bound(std::size_t h, std::size_t n) {
  if (h < 1) throw std::domain_error("growth_bound: h must be >= 1");
  if (n < h) throw std::domain_error("growth_bound: bound form invalid for n < h");
  const double hd = static_cast<double>(h);
  return hd * (std::log(static_cast<double>(n) / hd) + 1.0);
}

std::pair<double, double> empirical_local_risk_range(const FiniteClass<HypothesisPair>& cls,
                                                     const SubjectDist& subjects,
                                                     const DataDist& data,
                                                     const LossSpec& loss) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& hyp : cls.members()) {
    for (std::size_t j = 0; j < subjects.size(); ++j) {
      const double r = local_risk(hyp, subjects.item(j), data, loss);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  return {lo, hi};
}

IndicatorClass<double> threshold_family(double beta_lo, double beta_hi, std::size_t grid) {
  IndicatorClass<double> cls;
  cls.functions.push_back([](const double& x) { return x; });
  cls.beta_grid = linear_beta_grid(beta_lo, beta_hi, grid);
  return cls;
}

IndicatorClass<double> interval_family(std::span<const double> endpoints, std::size_t grid) {
  if (endpoints.size() < 2) throw std::invalid_argument("interval_family: need endpoints");
  IndicatorClass<double> cls;
  for (std::size_t a = 0; a < endpoints.size(); ++a) {
    for (std::size_t b = a; b < endpoints.size(); ++b) {
      const double lo = endpoints[a], hi = endpoints[b];
      cls.functions.push_back(
          [lo, hi](const double& x) { return (x >= lo && x <= hi) ? 1.0 : 0.0; });
    }
  }
  cls.beta_grid = linear_beta_grid(0.0, 1.0, grid);
  return cls;
}

namespace {

std::vector<double> observed_grid(std::span<const double> values, std::size_t grid) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(lo < hi)) {  // constant family: straddle the single value
    lo -= 0.5;
    hi += 0.5;
  }
  return linear_beta_grid(lo, hi, grid);
}

}  // namespace

IndicatorClass<Sample> data_risk_indicators(const FiniteClass<HypothesisPair>& cls,
                                            const SubjectToken& tau, const LossSpec& loss,
                                            std::span<const Sample> value_pool,
                                            std::size_t grid) {
  IndicatorClass<Sample> out;
  std::vector<double> observed;
  for (const auto& hyp : cls.members()) {
    out.functions.push_back([loss, tau, hyp](const Sample& z) {
      return basic_loss(loss, z, tau, hyp);
    });
    for (const Sample& z : value_pool) observed.push_back(basic_loss(loss, z, tau, hyp));
  }
  out.beta_grid = observed_grid(observed, grid);
  return out;
}

IndicatorClass<SubjectToken> subject_risk_indicators(const FiniteClass<HypothesisPair>& cls,
                                                     const DataDist& data,
                                                     const LossSpec& loss,
                                                     std::span<const SubjectToken> value_pool,
                                                     std::size_t grid) {
  IndicatorClass<SubjectToken> out;
  std::vector<double> observed;
  for (const auto& hyp : cls.members()) {
    out.functions.push_back([data, loss, hyp](const SubjectToken& tau) {
      return local_risk(hyp, tau, data, loss);
    });
    for (const SubjectToken& tau : value_pool)
      observed.push_back(local_risk(hyp, tau, data, loss));
  }
  out.beta_grid = observed_grid(observed, grid);
  return out;
}

}  // namespace subjectivity

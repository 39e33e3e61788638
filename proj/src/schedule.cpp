#include "subjectivity/schedule.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace subjectivity {

void RangeSpec::validate() const {
  if (!(bz > 0.0) || !(btau > 0.0))
    throw std::domain_error("RangeSpec: both ranges must be strictly positive");
}

double schedule_rhs(std::uint64_t m, double eps, const RangeSpec& ranges) {
  ranges.validate();
  if (m == 0) throw std::domain_error("schedule_rhs: m must be positive");
  if (!(eps > 0.0)) throw std::domain_error("schedule_rhs: eps must be positive");
  const double md = static_cast<double>(m);
  return (2.0 * ranges.bz * ranges.bz / (eps * eps)) * std::log(md) +
         (ranges.bz * ranges.bz / (ranges.btau * ranges.btau)) * md;
}

std::uint64_t min_data_samples(std::uint64_t m, double eps, const RangeSpec& ranges) {
  const double rhs = schedule_rhs(m, eps, ranges);
  if (!(rhs < 9.0e18)) throw std::domain_error("min_data_samples: rule value overflows");
  // strict inequality: the smallest integer > rhs is floor(rhs) + 1
  return static_cast<std::uint64_t>(std::floor(rhs)) + 1;
}

std::vector<SchedulePoint> make_schedule(std::span<const std::uint64_t> m_values, double eps,
                                         const RangeSpec& ranges) {
  if (m_values.empty()) throw std::domain_error("make_schedule: empty m sequence");
  std::vector<SchedulePoint> points;
  points.reserve(m_values.size());
  for (std::size_t k = 0; k < m_values.size(); ++k) {
    if (k > 0 && m_values[k] <= m_values[k - 1])
      throw std::domain_error("make_schedule: m values must be strictly increasing");
    const std::uint64_t m = m_values[k];
    points.push_back({m, min_data_samples(m, eps, ranges), schedule_rhs(m, eps, ranges)});
    if (k > 0 && points[k].l <= points[k - 1].l)
      throw std::domain_error("make_schedule: ranges yield non-increasing l at m=" +
                              std::to_string(m));
  }
  return points;
}

}  // namespace subjectivity

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace subjectivity {

// Loss and local-risk ranges: bz = B_z - A_z, btau = B_tau - A_tau. The
// defaults match losses normalized to [0, 1].
struct RangeSpec {
  double bz = 1.0;
  double btau = 1.0;

  void validate() const;
};

// Right-hand side of the coupled sample-size rule:
//   (2 bz^2 / eps^2) ln m + (bz^2 / btau^2) m.
double schedule_rhs(std::uint64_t m, double eps, const RangeSpec& ranges = {});

// Smallest l strictly greater than the rule's right-hand side, i.e.
// floor(rhs) + 1. Throws std::domain_error for m = 0 or eps <= 0.
std::uint64_t min_data_samples(std::uint64_t m, double eps, const RangeSpec& ranges = {});

struct SchedulePoint {
  std::uint64_t m = 0;
  std::uint64_t l = 0;
  double rhs = 0.0;
};

// Pairs (m, min_data_samples(m, ...)) for a strictly increasing m sequence.
// The emitted l sequence is checked to be strictly increasing; range
// choices that collapse consecutive l values are rejected.
std::vector<SchedulePoint> make_schedule(std::span<const std::uint64_t> m_values, double eps,
                                         const RangeSpec& ranges = {});

}  // namespace subjectivity

#pragma once

#include <cstdint>
#include <variant>

#include "subjectivity/schedule.hpp"

namespace subjectivity {

// Capacity given directly as annealed entropies at the doubled sample
// counts, or as dimensions to be expanded through the growth bound
// h (1 + ln(2n/h)).
struct EntropyCapacity {
  double h_tau_2m = 0.0;
  double h_z_2l = 0.0;
};

struct DimensionCapacity {
  std::uint64_t h_tau = 1;
  std::uint64_t h_z = 1;
};

struct BoundInputs {
  std::uint64_t m = 1;
  std::uint64_t l = 1;
  RangeSpec ranges;
  std::variant<EntropyCapacity, DimensionCapacity> capacity = EntropyCapacity{};

  void validate() const;
};

struct BoundTerms {
  double subject_term = 0.0;  // 4 exp{(H_tau(2m)/m - (eps-1/m)^2/btau^2) m}
  double data_term = 0.0;     // 4 exp{(ln(m)/l + H_z(2l)/l - (eps-1/l)^2/bz^2) l}
  double total() const { return subject_term + data_term; }
};

// Raw two-term uniform-convergence bound. Values above 1 are returned as
// computed (vacuous but monotone); exponents are evaluated in log space and
// saturated so no term underflows below 1e-300. Requires
// eps > max(1/m, 1/l).
BoundTerms uniform_convergence_terms(const BoundInputs& inp, double eps);
double uniform_convergence_bound(const BoundInputs& inp, double eps);

// Invert the bound: the unique eps with bound(eps) = eta, by bisection on
// (max(1/m, 1/l), eps_max]. eps_max defaults to bz + btau. Throws
// InfeasibleError when even eps_max cannot push the bound below eta.
double solve_epsilon(double eta, const BoundInputs& inp, double eps_max = 0.0);

}  // namespace subjectivity

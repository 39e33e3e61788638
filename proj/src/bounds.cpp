#include "subjectivity/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "subjectivity/error.hpp"

namespace subjectivity {

namespace {

constexpr double kLogFloor = -690.77552789821371;  // ln(1e-300)

double saturated_exp(double log_value) { return std::exp(std::max(log_value, kLogFloor)); }

struct Entropies {
  double h_tau_2m;
  double h_z_2l;
};

Entropies resolve_capacity(const BoundInputs& inp) {
  if (const auto* e = std::get_if<EntropyCapacity>(&inp.capacity))
    return {e->h_tau_2m, e->h_z_2l};
  const auto& d = std::get<DimensionCapacity>(inp.capacity);
  const double ht = static_cast<double>(d.h_tau);
  const double hz = static_cast<double>(d.h_z);
  return {ht * (1.0 + std::log(2.0 * static_cast<double>(inp.m) / ht)),
          hz * (1.0 + std::log(2.0 * static_cast<double>(inp.l) / hz))};
}

}  // namespace

void BoundInputs::validate() const {
  if (m == 0 || l == 0) throw std::domain_error("BoundInputs: m and l must be positive");
  ranges.validate();
  if (const auto* e = std::get_if<EntropyCapacity>(&capacity)) {
    if (e->h_tau_2m < 0.0 || e->h_z_2l < 0.0)
      throw std::domain_error("BoundInputs: entropies must be nonnegative");
  } else {
    const auto& d = std::get<DimensionCapacity>(capacity);
    if (d.h_tau < 1 || d.h_z < 1)
      throw std::domain_error("BoundInputs: dimensions must be >= 1");
    if (2 * m < d.h_tau || 2 * l < d.h_z)
      throw std::domain_error("BoundInputs: growth-bound mode needs 2m >= h_tau, 2l >= h_z");
  }
}

BoundTerms uniform_convergence_terms(const BoundInputs& inp, double eps) {
  inp.validate();
  const double md = static_cast<double>(inp.m);
  const double ld = static_cast<double>(inp.l);
  if (!(eps > std::max(1.0 / md, 1.0 / ld)))
    throw std::domain_error("uniform_convergence_bound: eps must exceed max(1/m, 1/l)");

  const Entropies ent = resolve_capacity(inp);
  const double btau2 = inp.ranges.btau * inp.ranges.btau;
  const double bz2 = inp.ranges.bz * inp.ranges.bz;

  const double e_m = eps - 1.0 / md;
  const double e_l = eps - 1.0 / ld;
  const double log4 = std::log(4.0);

  BoundTerms terms;
  terms.subject_term = saturated_exp(log4 + (ent.h_tau_2m / md - e_m * e_m / btau2) * md);
  terms.data_term =
      saturated_exp(log4 + (std::log(md) / ld + ent.h_z_2l / ld - e_l * e_l / bz2) * ld);
  return terms;
}

double uniform_convergence_bound(const BoundInputs& inp, double eps) {
  return uniform_convergence_terms(inp, eps).total();
}

double solve_epsilon(double eta, const BoundInputs& inp, double eps_max) {
  inp.validate();
  if (!(eta > 0.0) || !(eta < 1.0))
    throw std::domain_error("solve_epsilon: eta must lie in (0, 1)");
  if (eps_max <= 0.0) eps_max = inp.ranges.bz + inp.ranges.btau;

  const double md = static_cast<double>(inp.m);
  const double ld = static_cast<double>(inp.l);
  const double eps_floor = std::max(1.0 / md, 1.0 / ld);
  if (!(eps_max > eps_floor))
    throw InfeasibleError("solve_epsilon: eps_max is inside the invalid domain");

  // bracket: just above the floor the bound is at least 4, far above eta
  double lo = eps_floor + 1e-12 * std::max(1.0, eps_floor);
  double f_lo = uniform_convergence_bound(inp, lo);
  if (f_lo <= eta)
    throw InfeasibleError("solve_epsilon: bound already below eta at the domain edge");
  const double f_hi = uniform_convergence_bound(inp, eps_max);
  if (f_hi >= eta)
    throw InfeasibleError("solve_epsilon: eta " + std::to_string(eta) +
                          " not achievable within eps_max " + std::to_string(eps_max));

  double hi = eps_max;
  // strictly decreasing on the valid domain, so plain bisection converges
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (uniform_convergence_bound(inp, mid) > eta) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace subjectivity

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subjectivity/risk.hpp"
#include "subjectivity/schedule.hpp"

namespace subjectivity {

// Generative ground truth on a finite support: exact risks are computable,
// so every probability the harness estimates has an exact reference.
struct Truth {
  DataDist data;
  SubjectDist subjects;
  LossSpec loss;
};

struct StepRow {
  std::uint64_t m = 0;
  std::uint64_t l = 0;
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

// Replication-indexed experiment record. Reports are reproducible
// bit-for-bit from (inputs, seed) regardless of the worker count: each
// replication draws from its own stream keyed by (seed, replication) —
// subject indices first, then sample indices — and per-replication
// statistics are reduced in replication order.
struct ExperimentReport {
  std::size_t replications = 0;
  std::uint64_t seed = 0;
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::vector<StepRow> per_step;
  std::vector<std::pair<std::string, double>> extras;
  std::optional<bool> pass;
};

// Estimate P{ max_alpha (R(alpha) - R_emp(alpha, m, l)) > eps } over `reps`
// replications of l sample draws and m subject draws, with a 95% Wilson
// interval. Two-sided deviations are reported as auxiliary data under
// extras["two_sided_estimate"].
ExperimentReport deviation_probability(const FiniteClass<HypothesisPair>& cls,
                                       const Truth& truth, double eps, std::size_t m,
                                       std::size_t l, std::size_t reps, std::uint64_t seed,
                                       std::size_t jobs = 1);

// Compare the uniform-deviation probability (at eps) against the
// subject-term plus summed data-term decomposition, both right-hand terms
// evaluated at eps/2. pass = false flags a violation: the lhs interval
// lying strictly above the rhs interval at 95% confidence.
ExperimentReport decomposition_check(const FiniteClass<HypothesisPair>& cls,
                                     const Truth& truth, double eps, std::size_t m,
                                     std::size_t l, std::size_t reps, std::uint64_t seed,
                                     std::size_t jobs = 1);

// Per schedule step, estimate E | inf_{Lambda(c)} R_emp - inf_{Lambda(c)} R |
// where Lambda(c) = { alpha : R(alpha) >= c }. Throws EmptyLevelSetError
// when c exceeds the class's largest true risk.
ExperimentReport consistency_trace(const FiniteClass<HypothesisPair>& cls, const Truth& truth,
                                   double c, std::span<const SchedulePoint> schedule,
                                   std::size_t reps, std::uint64_t seed,
                                   std::size_t jobs = 1);

// Sanity check that the empirical global risk is an unbiased estimator of
// the global risk for one fixed hypothesis: pass when the mean deviation
// stays within 3 standard errors. With a single replication no pass/fail
// claim is made.
ExperimentReport unbiasedness_check(const HypothesisPair& hyp, const Truth& truth,
                                    std::size_t m, std::size_t l, std::size_t reps,
                                    std::uint64_t seed, std::size_t jobs = 1);

}  // namespace subjectivity

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "subjectivity/risk.hpp"

namespace subjectivity {

struct AlternatingConfig {
  std::size_t max_iters = 100;
  double tol = 1e-12;        // stop when the risk improves by less than this
  std::size_t restarts = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

// Outcome of a fit. `trace` is nonincreasing within 1e-12 per step and its
// last entry equals `risk`. For exhaustive fits `index` is the winning
// member's enumeration index; for the alternating solver it is the winning
// restart.
template <typename H>
struct FitResult {
  H hypothesis;
  double risk = 0.0;
  std::size_t index = 0;
  std::size_t iterations = 0;
  std::vector<double> trace;
};

// Exhaustive minimizer of the traditional risk. Ties break toward the
// lowest enumeration index.
FitResult<Predictor> erm_fit(const FiniteClass<Predictor>& cls, const DataDist& data,
                             const LossSpec& loss);

// Exact minimizer of the empirical global risk over the g x h product
// class; ties break lexicographically on (g index, h index). Throws
// SizeCapError when the product exceeds `cap`.
FitResult<HypothesisPair> egrm_fit_exhaustive(const FiniteClass<SubjectFn>& g_class,
                                              const FiniteClass<SubjectFn>& h_class,
                                              const DataDist& data,
                                              const SubjectDist& subjects,
                                              const LossSpec& loss,
                                              std::size_t cap = 10'000'000);

// A parametric per-subject predictor family that the alternating solver can
// refit in closed form under fixed hard assignments.
class ParametricGFamily {
 public:
  virtual ~ParametricGFamily() = default;

  virtual std::vector<double> initial_params(const SubjectToken& tau) const = 0;
  virtual double predict(std::span<const double> params, const Sample& z,
                         const SubjectToken& tau) const = 0;
  // Minimize sum_k weights[k] * L_0(g(samples[rows[k]]), y) for one subject.
  virtual std::vector<double> refit(std::span<const std::size_t> rows,
                                    std::span<const double> weights, const DataDist& data,
                                    const SubjectToken& tau,
                                    const LossSpec& loss) const = 0;
};

// One constant per subject. Closed-form refits: weighted mean (squared),
// weighted median (absolute), best observed label (zero_one).
class PerSubjectConstantFamily final : public ParametricGFamily {
 public:
  std::vector<double> initial_params(const SubjectToken&) const override { return {0.0}; }
  double predict(std::span<const double> params, const Sample&,
                 const SubjectToken&) const override {
    return params[0];
  }
  std::vector<double> refit(std::span<const std::size_t> rows, std::span<const double> weights,
                            const DataDist& data, const SubjectToken& tau,
                            const LossSpec& loss) const override;
};

// Hard-assignment alternating minimization with random restarts.
// Per iteration: (A) reassign each sample to the subject with the smallest
// clamped base loss (ties to the lowest id), (B) refit each subject on its
// assigned samples, keeping the previous parameters when the refit does
// not improve that subject's contribution (clamping can shift the
// closed-form optimum). Both steps are nonincreasing in the empirical
// global risk, so the trace is monotone. Restart r draws from an
// independent stream keyed by (seed, r); the best restart wins, ties to
// the lowest restart index.
//
// `warm_start`, when nonempty, is the initial assignment used by restart 0.
FitResult<HypothesisPair> egrm_fit_alternating(
    const ParametricGFamily& family, const DataDist& data, const SubjectDist& subjects,
    const LossSpec& loss, const AlternatingConfig& cfg,
    std::span<const std::size_t> warm_start = {});

}  // namespace subjectivity

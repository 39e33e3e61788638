#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "subjectivity/distribution.hpp"
#include "subjectivity/error.hpp"

namespace subjectivity {

// One observation z = (x, y). Two samples may share x with different y;
// the multi-label case is legal by construction.
struct Sample {
  std::vector<double> x;
  double y = 0.0;

  Sample() = default;
  Sample(std::vector<double> features, double label);
  Sample(double feature, double label) : Sample(std::vector<double>{feature}, label) {}
};

// One drawn subject tau_j. Carries its prior weight under F(tau); ids within
// a subject set are contiguous from 0 and the priors sum to 1.
struct SubjectToken {
  std::size_t id = 0;
  double prior = 1.0;
};

using SubjectDist = FiniteDistribution<SubjectToken>;

SubjectDist uniform_subjects(std::size_t m);
SubjectDist subjects_with_priors(const std::vector<double>& priors);

enum class LossKind { squared, absolute, zero_one };

// Bounded loss. Every base-loss evaluation is clamped into [lower, upper];
// the bounds double as the A_z/B_z constants of the convergence results.
struct LossSpec {
  LossKind kind = LossKind::squared;
  double lower = 0.0;
  double upper = 1.0;

  LossSpec() = default;
  LossSpec(LossKind k, double lo, double hi);

  // Clamped per-subject loss L_0(prediction, label). zero_one classifies a
  // prediction as correct when |prediction - label| <= 0.5 (ties on the
  // threshold count as correct).
  double base_loss(double prediction, double label) const;

  double range() const { return upper - lower; }
};

// Joint hypothesis: per-subject predictor g(z, tau) and assignment weight
// h(z, tau) = p(tau|z)/p(tau). h is nonnegative and, over the subject set it
// was normalized against, satisfies sum_j h(z, tau_j) * prior_j = 1 per z.
using SubjectFn = std::function<double(const Sample&, const SubjectToken&)>;

struct HypothesisPair {
  SubjectFn g;
  SubjectFn h;
};

// Basic loss Q(z, tau, alpha) = L_0(z, tau, g(z, tau)) * h(z, tau), with L_0
// clamped into [loss.lower, loss.upper]. Throws EvaluationError when g or h
// produce a non-finite value or h is negative, naming the offending (z, tau).
double basic_loss(const LossSpec& loss, const Sample& z, const SubjectToken& tau,
                  const HypothesisPair& hyp);

// Row-per-sample assignment weights over a finite working dataset,
// normalized so that sum_j cell(i, j) * prior_j = 1 for every row i.
class AssignmentTable {
 public:
  AssignmentTable(std::vector<double> cells, std::size_t rows, std::size_t subjects);

  double at(std::size_t row, std::size_t subject) const {
    return cells_[row * subjects_ + subject];
  }
  std::size_t rows() const { return rows_; }
  std::size_t subjects() const { return subjects_; }
  const std::vector<double>& cells() const { return cells_; }

 private:
  std::vector<double> cells_;  // [row * subjects + subject]
  std::size_t rows_;
  std::size_t subjects_;
};

// Rescale raw nonnegative weights so each row satisfies the density-ratio
// constraint sum_j h(z, tau_j) * prior_j = 1, preserving proportions.
// A row with no positive weight raises DegenerateAssignmentError.
AssignmentTable normalize_assignment(const std::vector<std::vector<double>>& raw,
                                     const SubjectDist& subjects);

// Bind per-row tables to a finite support. The returned pair resolves a
// sample to its support row by exact (x, y) match; evaluating either half on
// a sample outside the support, or on a subject id outside the normalized
// set, raises SubjectMismatchError / EvaluationError.
HypothesisPair make_tabular_pair(std::vector<Sample> support,
                                 std::vector<double> g_cells,  // [row * subjects + j]
                                 AssignmentTable h);

// Short "(x=..., y=...)" form used in error messages.
std::string describe_sample(const Sample& z);

}  // namespace subjectivity

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "subjectivity/core.hpp"

namespace subjectivity {

using DataDist = FiniteDistribution<Sample>;
using Predictor = std::function<double(const Sample&)>;

// Explicitly enumerated hypothesis class. Enumeration order is the
// tie-breaking order everywhere and is stable across runs.
template <typename H>
class FiniteClass {
 public:
  explicit FiniteClass(std::vector<H> members) : members_(std::move(members)) {
    if (members_.empty()) throw std::invalid_argument("FiniteClass: must be nonempty");
  }

  std::size_t size() const { return members_.size(); }
  const H& member(std::size_t i) const { return members_[i]; }
  const std::vector<H>& members() const { return members_; }

 private:
  std::vector<H> members_;
};

// Fixed-order weighted reduction: subjects outer, samples inner, ascending
// index, always scalar. Risks are reproducible bit-for-bit because every
// risk sum in the project funnels through this.
double weighted_sum(std::span<const double> values, std::span<const double> weights);

// R_t(g) = sum_i w_i * clamp(L(z_i, g(z_i))).
double traditional_risk(const Predictor& g, const DataDist& data, const LossSpec& loss);

// R_s = sum_j w_j * sum_i w_i * Q(z_i, tau_j); with uniform weights this is
// exactly the empirical global risk (1/m) sum_j (1/l) sum_i Q.
//
// When `subjects` is a complete base set (ids exactly 0..m-1 in order), the
// density-ratio constraint sum_j h(z, tau_j) * w_j = 1 is verified per
// sample within 1e-9 and SubjectMismatchError is raised on violation. For
// an empirical multiset of drawn tokens the constraint only holds in
// expectation, so the check is skipped.
double global_risk(const HypothesisPair& hyp, const DataDist& data,
                   const SubjectDist& subjects, const LossSpec& loss);

// R_lo(alpha, tau) = sum_i w_i * Q(z_i, tau). The subject-weighted sum of
// local risks over a base set reproduces global_risk exactly.
double local_risk(const HypothesisPair& hyp, const SubjectToken& tau, const DataDist& data,
                  const LossSpec& loss);

// Delta R* = min traditional risk over `erm_class` minus min global risk
// over `egrm_class`. Nonnegative whenever the pair class contains a
// tau-constant lift of every predictor.
double risk_gap(const FiniteClass<Predictor>& erm_class,
                const FiniteClass<HypothesisPair>& egrm_class, const DataDist& data,
                const SubjectDist& subjects, const LossSpec& loss);

// Precomputed basic-loss matrix over a finite support, one contiguous row
// per subject. Backs the solver and Monte Carlo hot paths.
class QTable {
 public:
  QTable(const HypothesisPair& hyp, const DataDist& data, const SubjectDist& subjects,
         const LossSpec& loss);

  double at(std::size_t subject, std::size_t row) const { return q_[subject * rows_ + row]; }
  std::span<const double> row(std::size_t subject) const {
    return {q_.data() + subject * rows_, rows_};
  }
  std::size_t subjects() const { return subjects_; }
  std::size_t rows() const { return rows_; }

 private:
  std::vector<double> q_;  // [subject * rows + row]
  std::size_t subjects_;
  std::size_t rows_;
};

}  // namespace subjectivity

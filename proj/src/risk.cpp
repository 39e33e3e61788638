#include "subjectivity/risk.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "subjectivity/kernels.hpp"

namespace subjectivity {

namespace {

// Evaluate one subject's g and h rows over the data support, with the same
// finiteness checks as basic_loss.
void evaluate_rows(const HypothesisPair& hyp, const DataDist& data, const SubjectToken& tau,
                   std::vector<double>& pred, std::vector<double>& hrow) {
  const std::size_t l = data.size();
  for (std::size_t i = 0; i < l; ++i) {
    const Sample& z = data.item(i);
    const double gv = hyp.g(z, tau);
    if (!std::isfinite(gv))
      throw EvaluationError("risk: non-finite g at z=" + describe_sample(z) + ", tau=" +
                            std::to_string(tau.id));
    const double hv = hyp.h(z, tau);
    if (!std::isfinite(hv) || hv < 0.0)
      throw EvaluationError("risk: invalid h at z=" + describe_sample(z) + ", tau=" +
                            std::to_string(tau.id));
    pred[i] = gv;
    hrow[i] = hv;
  }
}

bool is_complete_base_set(const SubjectDist& subjects) {
  for (std::size_t j = 0; j < subjects.size(); ++j)
    if (subjects.item(j).id != j) return false;
  return true;
}

}  // namespace

double weighted_sum(std::span<const double> values, std::span<const double> weights) {
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) acc += weights[i] * values[i];
  return acc;
}

double traditional_risk(const Predictor& g, const DataDist& data, const LossSpec& loss) {
  const std::size_t l = data.size();
  std::vector<double> pred(l), labels(l), ones(l, 1.0), q(l);
  for (std::size_t i = 0; i < l; ++i) {
    const Sample& z = data.item(i);
    const double gv = g(z);
    if (!std::isfinite(gv))
      throw EvaluationError("traditional_risk: non-finite prediction at z=" +
                            describe_sample(z));
    pred[i] = gv;
    labels[i] = z.y;
  }
  kernels::q_row(loss.kind, loss.lower, loss.upper, pred.data(), labels.data(), ones.data(),
                 q.data(), l);
  return weighted_sum(q, data.weights());
}

double global_risk(const HypothesisPair& hyp, const DataDist& data,
                   const SubjectDist& subjects, const LossSpec& loss) {
  const std::size_t l = data.size();
  const std::size_t m = subjects.size();
  std::vector<double> pred(l), hrow(l), labels(l), q(l);
  for (std::size_t i = 0; i < l; ++i) labels[i] = data.item(i).y;

  const bool check_norm = is_complete_base_set(subjects);
  std::vector<double> norm(check_norm ? l : 0, 0.0);

  double acc = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const SubjectToken& tau = subjects.item(j);
    evaluate_rows(hyp, data, tau, pred, hrow);
    if (check_norm)
      for (std::size_t i = 0; i < l; ++i) norm[i] += hrow[i] * subjects.weight(j);
    kernels::q_row(loss.kind, loss.lower, loss.upper, pred.data(), labels.data(),
                   hrow.data(), q.data(), l);
    acc += subjects.weight(j) * weighted_sum(q, data.weights());
  }

  if (check_norm) {
    for (std::size_t i = 0; i < l; ++i) {
      if (std::abs(norm[i] - 1.0) > 1e-9)
        throw SubjectMismatchError(
            "global_risk: hypothesis is not normalized against this subject set (sample " +
            std::to_string(i) + " sums to " + std::to_string(norm[i]) + ")");
    }
  }
  return acc;
}

double local_risk(const HypothesisPair& hyp, const SubjectToken& tau, const DataDist& data,
                  const LossSpec& loss) {
  const std::size_t l = data.size();
  std::vector<double> pred(l), hrow(l), labels(l), q(l);
  for (std::size_t i = 0; i < l; ++i) labels[i] = data.item(i).y;
  evaluate_rows(hyp, data, tau, pred, hrow);
  kernels::q_row(loss.kind, loss.lower, loss.upper, pred.data(), labels.data(), hrow.data(),
                 q.data(), l);
  return weighted_sum(q, data.weights());
}

double risk_gap(const FiniteClass<Predictor>& erm_class,
                const FiniteClass<HypothesisPair>& egrm_class, const DataDist& data,
                const SubjectDist& subjects, const LossSpec& loss) {
  double erm_best = std::numeric_limits<double>::infinity();
  for (const auto& g : erm_class.members())
    erm_best = std::min(erm_best, traditional_risk(g, data, loss));
  double egrm_best = std::numeric_limits<double>::infinity();
  for (const auto& hyp : egrm_class.members())
    egrm_best = std::min(egrm_best, global_risk(hyp, data, subjects, loss));
  return erm_best - egrm_best;
}

QTable::QTable(const HypothesisPair& hyp, const DataDist& data, const SubjectDist& subjects,
               const LossSpec& loss)
    : q_(subjects.size() * data.size()), subjects_(subjects.size()), rows_(data.size()) {
  std::vector<double> pred(rows_), hrow(rows_), labels(rows_);
  for (std::size_t i = 0; i < rows_; ++i) labels[i] = data.item(i).y;
  for (std::size_t j = 0; j < subjects_; ++j) {
    evaluate_rows(hyp, data, subjects.item(j), pred, hrow);
    kernels::q_row(loss.kind, loss.lower, loss.upper, pred.data(), labels.data(),
                   hrow.data(), q_.data() + j * rows_, rows_);
  }
}

}  // namespace subjectivity

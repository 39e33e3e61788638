#include "subjectivity/core.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

namespace subjectivity {

Sample::Sample(std::vector<double> features, double label)
    : x(std::move(features)), y(label) {
  for (double v : x)
    if (!std::isfinite(v)) throw std::invalid_argument("Sample: non-finite feature");
  if (!std::isfinite(y)) throw std::invalid_argument("Sample: non-finite label");
}

SubjectDist uniform_subjects(std::size_t m) {
  if (m == 0) throw std::invalid_argument("uniform_subjects: m must be positive");
  const double p = 1.0 / static_cast<double>(m);
  std::vector<SubjectToken> tokens(m);
  for (std::size_t j = 0; j < m; ++j) tokens[j] = SubjectToken{j, p};
  return SubjectDist::uniform(std::move(tokens));
}

SubjectDist subjects_with_priors(const std::vector<double>& priors) {
  if (priors.empty()) throw std::invalid_argument("subjects_with_priors: empty prior list");
  double sum = 0.0;
  for (double p : priors) {
    if (!(p > 0.0) || p > 1.0)
      throw std::invalid_argument("subjects_with_priors: priors must lie in (0, 1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("subjects_with_priors: priors must sum to 1");
  std::vector<SubjectToken> tokens(priors.size());
  for (std::size_t j = 0; j < priors.size(); ++j) tokens[j] = SubjectToken{j, priors[j]};
  return SubjectDist::weighted(std::move(tokens), priors);
}

LossSpec::LossSpec(LossKind k, double lo, double hi) : kind(k), lower(lo), upper(hi) {
  if (!(lower < upper)) throw std::invalid_argument("LossSpec: lower must be < upper");
  if (!std::isfinite(lower) || !std::isfinite(upper))
    throw std::invalid_argument("LossSpec: bounds must be finite");
}

double LossSpec::base_loss(double prediction, double label) const {
  const double d = prediction - label;
  double l0 = 0.0;
  switch (kind) {
    case LossKind::squared: l0 = d * d; break;
    case LossKind::absolute: l0 = std::abs(d); break;
    case LossKind::zero_one: l0 = std::abs(d) > 0.5 ? 1.0 : 0.0; break;
  }
  return std::min(std::max(l0, lower), upper);
}

std::string describe_sample(const Sample& z) {
  std::ostringstream os;
  os << "(x=[";
  for (std::size_t i = 0; i < z.x.size(); ++i) {
    if (i > 0) os << ", ";
    os << z.x[i];
  }
  os << "], y=" << z.y << ")";
  return os.str();
}

double basic_loss(const LossSpec& loss, const Sample& z, const SubjectToken& tau,
                  const HypothesisPair& hyp) {
  const double gv = hyp.g(z, tau);
  if (!std::isfinite(gv))
    throw EvaluationError("basic_loss: non-finite g at z=" + describe_sample(z) +
                          ", tau=" + std::to_string(tau.id));
  const double hv = hyp.h(z, tau);
  if (!std::isfinite(hv) || hv < 0.0)
    throw EvaluationError("basic_loss: invalid h (" + std::to_string(hv) + ") at z=" +
                          describe_sample(z) + ", tau=" + std::to_string(tau.id));
  return loss.base_loss(gv, z.y) * hv;
}

AssignmentTable::AssignmentTable(std::vector<double> cells, std::size_t rows,
                                 std::size_t subjects)
    : cells_(std::move(cells)), rows_(rows), subjects_(subjects) {
  if (rows_ == 0 || subjects_ == 0 || cells_.size() != rows_ * subjects_)
    throw std::invalid_argument("AssignmentTable: shape mismatch");
}

AssignmentTable normalize_assignment(const std::vector<std::vector<double>>& raw,
                                     const SubjectDist& subjects) {
  if (raw.empty()) throw std::invalid_argument("normalize_assignment: no rows");
  const std::size_t m = subjects.size();
  std::vector<double> cells(raw.size() * m, 0.0);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].size() != m)
      throw std::invalid_argument("normalize_assignment: row " + std::to_string(i) +
                                  " has wrong width");
    double mass = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double w = raw[i][j];
      if (!(w >= 0.0) || !std::isfinite(w))
        throw std::invalid_argument("normalize_assignment: negative or non-finite weight");
      mass += w * subjects.item(j).prior;
    }
    if (mass <= 0.0)
      throw DegenerateAssignmentError("normalize_assignment: all-zero row " +
                                      std::to_string(i));
    for (std::size_t j = 0; j < m; ++j) cells[i * m + j] = raw[i][j] / mass;
  }
  return AssignmentTable(std::move(cells), raw.size(), m);
}

namespace {

// Shared lookup state for one tabular hypothesis.
struct TabularState {
  std::vector<Sample> support;
  std::vector<double> g_cells;
  AssignmentTable h;

  std::size_t row_of(const Sample& z) const {
    for (std::size_t i = 0; i < support.size(); ++i) {
      if (support[i].y == z.y && support[i].x == z.x) return i;
    }
    throw SubjectMismatchError("tabular hypothesis: sample " + describe_sample(z) +
                               " is not in the working support");
  }

  void check_subject(const SubjectToken& tau) const {
    if (tau.id >= h.subjects())
      throw SubjectMismatchError("tabular hypothesis: subject id " +
                                 std::to_string(tau.id) +
                                 " outside the normalized subject set of size " +
                                 std::to_string(h.subjects()));
  }
};

}  // namespace

HypothesisPair make_tabular_pair(std::vector<Sample> support, std::vector<double> g_cells,
                                 AssignmentTable h) {
  if (support.size() != h.rows())
    throw std::invalid_argument("make_tabular_pair: support/table row mismatch");
  if (g_cells.size() != h.rows() * h.subjects())
    throw std::invalid_argument("make_tabular_pair: g table shape mismatch");
  auto state = std::make_shared<TabularState>(
      TabularState{std::move(support), std::move(g_cells), std::move(h)});
  HypothesisPair pair;
  pair.g = [state](const Sample& z, const SubjectToken& tau) {
    state->check_subject(tau);
    return state->g_cells[state->row_of(z) * state->h.subjects() + tau.id];
  };
  pair.h = [state](const Sample& z, const SubjectToken& tau) {
    state->check_subject(tau);
    return state->h.at(state->row_of(z), tau.id);
  };
  return pair;
}

}  // namespace subjectivity

#include "subjectivity/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "subjectivity/rng.hpp"

namespace subjectivity {

void AlternatingConfig::validate() const {
  if (max_iters < 1) throw std::invalid_argument("AlternatingConfig: max_iters must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("AlternatingConfig: tol must be > 0");
  if (restarts < 1) throw std::invalid_argument("AlternatingConfig: restarts must be >= 1");
}

FitResult<Predictor> erm_fit(const FiniteClass<Predictor>& cls, const DataDist& data,
                             const LossSpec& loss) {
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_index = 0;
  for (std::size_t i = 0; i < cls.size(); ++i) {
    const double r = traditional_risk(cls.member(i), data, loss);
    if (r < best) {
      best = r;
      best_index = i;
    }
  }
  return {cls.member(best_index), best, best_index, 0, {best}};
}

FitResult<HypothesisPair> egrm_fit_exhaustive(const FiniteClass<SubjectFn>& g_class,
                                              const FiniteClass<SubjectFn>& h_class,
                                              const DataDist& data,
                                              const SubjectDist& subjects,
                                              const LossSpec& loss, std::size_t cap) {
  if (g_class.size() > cap / h_class.size())
    throw SizeCapError("egrm_fit_exhaustive: product class of " +
                       std::to_string(g_class.size()) + " x " +
                       std::to_string(h_class.size()) + " members exceeds cap " +
                       std::to_string(cap) + "; use the alternating solver");

  double best = std::numeric_limits<double>::infinity();
  std::size_t best_g = 0, best_h = 0;
  for (std::size_t gi = 0; gi < g_class.size(); ++gi) {
    for (std::size_t hi = 0; hi < h_class.size(); ++hi) {
      const HypothesisPair pair{g_class.member(gi), h_class.member(hi)};
      const double r = global_risk(pair, data, subjects, loss);
      if (r < best) {
        best = r;
        best_g = gi;
        best_h = hi;
      }
    }
  }
  const HypothesisPair winner{g_class.member(best_g), h_class.member(best_h)};
  return {winner, best, best_g * h_class.size() + best_h, 0, {best}};
}

std::vector<double> PerSubjectConstantFamily::refit(std::span<const std::size_t> rows,
                                                    std::span<const double> weights,
                                                    const DataDist& data,
                                                    const SubjectToken&,
                                                    const LossSpec& loss) const {
  switch (loss.kind) {
    case LossKind::squared: {
      double wy = 0.0, w = 0.0;
      for (std::size_t k = 0; k < rows.size(); ++k) {
        wy += weights[k] * data.item(rows[k]).y;
        w += weights[k];
      }
      return {wy / w};
    }
    case LossKind::absolute: {
      std::vector<std::pair<double, double>> labeled(rows.size());
      double total = 0.0;
      for (std::size_t k = 0; k < rows.size(); ++k) {
        labeled[k] = {data.item(rows[k]).y, weights[k]};
        total += weights[k];
      }
      std::sort(labeled.begin(), labeled.end());
      double acc = 0.0;
      for (const auto& [y, w] : labeled) {
        acc += w;
        if (acc >= 0.5 * total) return {y};
      }
      return {labeled.back().first};
    }
    case LossKind::zero_one: {
      // best observed label under the 0.5 decision threshold; ties to the
      // smallest value
      double best_c = 0.0, best_err = std::numeric_limits<double>::infinity();
      std::vector<double> candidates(rows.size());
      for (std::size_t k = 0; k < rows.size(); ++k) candidates[k] = data.item(rows[k]).y;
      std::sort(candidates.begin(), candidates.end());
      candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
      for (const double c : candidates) {
        double err = 0.0;
        for (std::size_t k = 0; k < rows.size(); ++k)
          err += weights[k] * loss.base_loss(c, data.item(rows[k]).y);
        if (err < best_err) {
          best_err = err;
          best_c = c;
        }
      }
      return {best_c};
    }
  }
  return {0.0};
}

namespace {

struct RestartOutcome {
  double risk = std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
  std::vector<double> trace;
  std::vector<std::size_t> assignment;
  std::vector<std::vector<double>> params;
};

// Freeze the current state into a tabular pair over the training support.
HypothesisPair state_pair(const ParametricGFamily& family,
                          const std::vector<std::vector<double>>& params,
                          const std::vector<std::size_t>& assignment, const DataDist& data,
                          const SubjectDist& subjects) {
  const std::size_t l = data.size(), m = subjects.size();
  std::vector<double> g_cells(l * m), h_cells(l * m, 0.0);
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < m; ++j)
      g_cells[i * m + j] = family.predict(params[j], data.item(i), subjects.item(j));
    h_cells[i * m + assignment[i]] = 1.0 / subjects.item(assignment[i]).prior;
  }
  return make_tabular_pair(data.items(), std::move(g_cells),
                           AssignmentTable(std::move(h_cells), l, m));
}

// Hard-assignment empirical global risk: the subject-weighted terms cancel
// against the hard h normalization, leaving the per-sample assigned loss.
double hard_objective(const ParametricGFamily& family,
                      const std::vector<std::vector<double>>& params,
                      const std::vector<std::size_t>& assignment, const DataDist& data,
                      const SubjectDist& subjects, const LossSpec& loss) {
  double acc = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const std::size_t j = assignment[i];
    const double pred = family.predict(params[j], data.item(i), subjects.item(j));
    acc += data.weight(i) * loss.base_loss(pred, data.item(i).y);
  }
  return acc;
}

// (B) step: refit each nonempty subject, keeping the old parameters unless
// the refit strictly improves that subject's contribution.
void fit_step(const ParametricGFamily& family, std::vector<std::vector<double>>& params,
              const std::vector<std::size_t>& assignment, const DataDist& data,
              const SubjectDist& subjects, const LossSpec& loss) {
  const std::size_t m = subjects.size();
  std::vector<std::vector<std::size_t>> rows(m);
  for (std::size_t i = 0; i < data.size(); ++i) rows[assignment[i]].push_back(i);
  for (std::size_t j = 0; j < m; ++j) {
    if (rows[j].empty()) continue;
    std::vector<double> weights(rows[j].size());
    for (std::size_t k = 0; k < rows[j].size(); ++k) weights[k] = data.weight(rows[j][k]);
    auto candidate = family.refit(rows[j], weights, data, subjects.item(j), loss);
    double old_contrib = 0.0, new_contrib = 0.0;
    for (std::size_t k = 0; k < rows[j].size(); ++k) {
      const Sample& z = data.item(rows[j][k]);
      old_contrib +=
          weights[k] * loss.base_loss(family.predict(params[j], z, subjects.item(j)), z.y);
      new_contrib +=
          weights[k] * loss.base_loss(family.predict(candidate, z, subjects.item(j)), z.y);
    }
    if (new_contrib < old_contrib) params[j] = std::move(candidate);
  }
}

// (A) step: assign each sample to the subject with the smallest clamped
// base loss; ties break to the lowest subject id.
void assignment_step(const ParametricGFamily& family,
                     const std::vector<std::vector<double>>& params,
                     std::vector<std::size_t>& assignment, const DataDist& data,
                     const SubjectDist& subjects, const LossSpec& loss) {
  const std::size_t m = subjects.size();
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Sample& z = data.item(i);
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < m; ++j) {
      const double l0 =
          loss.base_loss(family.predict(params[j], z, subjects.item(j)), z.y);
      if (l0 < best) {
        best = l0;
        best_j = j;
      }
    }
    assignment[i] = best_j;
  }
}

}  // namespace

FitResult<HypothesisPair> egrm_fit_alternating(const ParametricGFamily& family,
                                               const DataDist& data,
                                               const SubjectDist& subjects,
                                               const LossSpec& loss,
                                               const AlternatingConfig& cfg,
                                               std::span<const std::size_t> warm_start) {
  cfg.validate();
  const std::size_t l = data.size(), m = subjects.size();
  if (!warm_start.empty()) {
    if (warm_start.size() != l)
      throw std::invalid_argument("egrm_fit_alternating: warm start size mismatch");
    for (const std::size_t a : warm_start)
      if (a >= m) throw std::invalid_argument("egrm_fit_alternating: warm start subject id");
  }

  RestartOutcome best;
  std::size_t best_restart = 0;
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    Rng rng = Rng::stream(cfg.seed, r);
    RestartOutcome run;
    run.assignment.resize(l);
    if (r == 0 && !warm_start.empty()) {
      std::copy(warm_start.begin(), warm_start.end(), run.assignment.begin());
    } else {
      for (auto& a : run.assignment) a = rng.uniform_index(m);
    }
    run.params.resize(m);
    for (std::size_t j = 0; j < m; ++j) run.params[j] = family.initial_params(subjects.item(j));
    fit_step(family, run.params, run.assignment, data, subjects, loss);

    double prev = hard_objective(family, run.params, run.assignment, data, subjects, loss);
    run.trace.push_back(prev);
    run.iterations = cfg.max_iters;
    for (std::size_t t = 1; t <= cfg.max_iters; ++t) {
      assignment_step(family, run.params, run.assignment, data, subjects, loss);
      fit_step(family, run.params, run.assignment, data, subjects, loss);
      const double risk =
          hard_objective(family, run.params, run.assignment, data, subjects, loss);
      if (!std::isfinite(risk))
        throw DivergenceError("egrm_fit_alternating: non-finite risk at iteration " +
                              std::to_string(t));
      run.trace.push_back(risk);
      if (prev - risk < cfg.tol) {
        run.iterations = t;
        break;
      }
      prev = risk;
    }
    run.risk = run.trace.back();
    if (run.risk < best.risk) {
      best = std::move(run);
      best_restart = r;
    }
  }

  FitResult<HypothesisPair> result;
  result.hypothesis = state_pair(family, best.params, best.assignment, data, subjects);
  result.risk = best.risk;
  result.index = best_restart;
  result.iterations = best.iterations;
  result.trace = std::move(best.trace);
  return result;
}

}  // namespace subjectivity

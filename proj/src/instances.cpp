#include "subjectivity/instances.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "subjectivity/rng.hpp"

namespace subjectivity {

SubjectFn tau_constant_lift(Predictor g) {
  return [g = std::move(g)](const Sample& z, const SubjectToken&) { return g(z); };
}

SubjectFn unit_assignment() {
  return [](const Sample&, const SubjectToken&) { return 1.0; };
}

SubjectFn subject_constants(std::vector<double> constants) {
  return [constants = std::move(constants)](const Sample&, const SubjectToken& tau) {
    if (tau.id >= constants.size())
      throw SubjectMismatchError("subject_constants: subject id " + std::to_string(tau.id) +
                                 " outside table of size " + std::to_string(constants.size()));
    return constants[tau.id];
  };
}

SubjectFn hard_assignment(std::vector<Sample> support, const std::vector<std::size_t>& assignment,
                          const SubjectDist& subjects) {
  if (assignment.size() != support.size())
    throw std::invalid_argument("hard_assignment: one subject per support row required");
  std::vector<std::vector<double>> raw(support.size(),
                                       std::vector<double>(subjects.size(), 0.0));
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] >= subjects.size())
      throw std::invalid_argument("hard_assignment: subject id out of range");
    raw[i][assignment[i]] = 1.0;
  }
  auto table = normalize_assignment(raw, subjects);
  const std::size_t cells = support.size() * subjects.size();
  return make_tabular_pair(std::move(support), std::vector<double>(cells, 0.0),
                           std::move(table))
      .h;
}

namespace {

std::size_t input_of(const Sample& z) {
  return static_cast<std::size_t>(std::llround(z.x.at(0)));
}

}  // namespace

GapInstance multilabel_gap_instance(const MultiLabelSpec& spec) {
  spec.validate();
  const auto generated = multilabel_dataset(spec);
  auto data = DataDist::uniform(generated.samples);
  auto subjects = uniform_subjects(spec.labels_per_input);

  double lo = spec.label_table[0][0], hi = lo;
  for (const auto& row : spec.label_table)
    for (const double y : row) {
      lo = std::min(lo, y);
      hi = std::max(hi, y);
    }
  const double span = hi - lo;
  const LossSpec loss(LossKind::squared, 0.0, std::max(1.0, span * span));

  // Per-input candidate values: the observed labels plus their mean, so the
  // enumeration contains the true single-map optimum.
  std::vector<std::vector<double>> candidates(spec.n_inputs);
  for (std::size_t i = 0; i < spec.n_inputs; ++i) {
    auto vals = spec.label_table[i];
    double mean_label = 0.0;
    for (const double y : vals) mean_label += y;
    vals.push_back(mean_label / static_cast<double>(vals.size()));
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    candidates[i] = std::move(vals);
  }
  std::size_t product = 1;
  for (const auto& v : candidates) {
    if (product > 100000 / v.size())
      throw SizeCapError("multilabel_gap_instance: predictor enumeration too large");
    product *= v.size();
  }

  std::vector<Predictor> predictors;
  predictors.reserve(product);
  for (std::size_t code = 0; code < product; ++code) {
    std::vector<double> table(spec.n_inputs);
    std::size_t rest = code;
    for (std::size_t i = 0; i < spec.n_inputs; ++i) {
      table[i] = candidates[i][rest % candidates[i].size()];
      rest /= candidates[i].size();
    }
    predictors.push_back(
        [table = std::move(table)](const Sample& z) { return table.at(input_of(z)); });
  }

  // Pair class: the latent per-subject table with its hard assignment,
  // plus a tau-constant lift of every predictor under h == 1.
  std::vector<HypothesisPair> pairs;
  pairs.reserve(predictors.size() + 1);
  SubjectFn latent_g = [table = spec.label_table](const Sample& z, const SubjectToken& tau) {
    const auto& row = table.at(input_of(z));
    if (tau.id >= row.size())
      throw SubjectMismatchError("latent table: subject id out of range");
    return row[tau.id];
  };
  pairs.push_back({latent_g,
                   hard_assignment(generated.samples, generated.latent_subjects, subjects)});
  for (const auto& g : predictors) pairs.push_back({tau_constant_lift(g), unit_assignment()});

  return GapInstance{spec,
                     std::move(data),
                     std::move(subjects),
                     loss,
                     FiniteClass<Predictor>(std::move(predictors)),
                     FiniteClass<HypothesisPair>(std::move(pairs))};
}

GapInstance apple_red_sweet() {
  MultiLabelSpec spec;
  spec.n_inputs = 1;
  spec.labels_per_input = 3;
  spec.label_table = {{0.0, 1.0, 2.0}};
  return multilabel_gap_instance(spec);
}

MultiLabelSpec random_multilabel_spec(std::uint64_t seed, std::size_t max_inputs,
                                      std::size_t max_labels) {
  Rng rng(seed);
  MultiLabelSpec spec;
  spec.seed = seed;
  spec.n_inputs = 1 + rng.uniform_index(max_inputs);
  spec.labels_per_input = 1 + rng.uniform_index(max_labels);
  spec.label_table.assign(spec.n_inputs, std::vector<double>(spec.labels_per_input));
  for (auto& row : spec.label_table)
    for (auto& y : row) y = static_cast<double>(rng.uniform_index(3));
  return spec;
}

BenchInstance two_point_bench() {
  std::vector<Sample> support{Sample(0.0, 0.0), Sample(0.0, 1.0)};
  auto data = DataDist::uniform(support);
  auto subjects = uniform_subjects(2);
  const LossSpec loss(LossKind::squared, 0.0, 1.0);

  std::vector<SubjectFn> g_members;
  for (const double c0 : {0.0, 1.0})
    for (const double c1 : {0.0, 1.0}) g_members.push_back(subject_constants({c0, c1}));

  std::vector<SubjectFn> h_members;
  for (const std::size_t a0 : {0u, 1u})
    for (const std::size_t a1 : {0u, 1u})
      h_members.push_back(hard_assignment(support, {a0, a1}, subjects));

  std::vector<HypothesisPair> pairs;
  for (const auto& g : g_members)
    for (const auto& h : h_members) pairs.push_back({g, h});

  return BenchInstance{std::move(data),
                       std::move(subjects),
                       loss,
                       FiniteClass<SubjectFn>(std::move(g_members)),
                       FiniteClass<SubjectFn>(std::move(h_members)),
                       FiniteClass<HypothesisPair>(std::move(pairs))};
}

}  // namespace subjectivity

#include "subjectivity/datagen.hpp"

#include <cmath>
#include <stdexcept>

#include "subjectivity/rng.hpp"

namespace subjectivity {

void MultiLabelSpec::validate() const {
  if (n_inputs == 0) throw std::invalid_argument("MultiLabelSpec: n_inputs must be positive");
  if (labels_per_input == 0)
    throw std::invalid_argument("MultiLabelSpec: labels_per_input must be positive");
  if (label_table.size() != n_inputs)
    throw std::invalid_argument("MultiLabelSpec: label_table must have one row per input");
  for (const auto& row : label_table) {
    if (row.size() != labels_per_input)
      throw std::invalid_argument("MultiLabelSpec: label_table row width mismatch");
    for (const double y : row)
      if (!std::isfinite(y)) throw std::invalid_argument("MultiLabelSpec: non-finite label");
  }
  if (!(noise_sd >= 0.0)) throw std::invalid_argument("MultiLabelSpec: noise_sd must be >= 0");
}

MultiLabelData multilabel_dataset(const MultiLabelSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  MultiLabelData out;
  out.samples.reserve(spec.n_inputs * spec.labels_per_input);
  out.latent_subjects.reserve(out.samples.capacity());
  for (std::size_t i = 0; i < spec.n_inputs; ++i) {
    for (std::size_t j = 0; j < spec.labels_per_input; ++j) {
      double y = spec.label_table[i][j];
      if (spec.noise_sd > 0.0) y += spec.noise_sd * rng.normal();
      out.samples.emplace_back(static_cast<double>(i), y);
      out.latent_subjects.push_back(j);
    }
  }
  return out;
}

double confusion_error(const MultiLabelSpec& spec, const LossSpec& loss) {
  spec.validate();
  if (spec.noise_sd > 0.0)
    throw std::domain_error("confusion_error: closed form requires noise_sd = 0");
  const double k = static_cast<double>(spec.labels_per_input);
  double acc = 0.0;
  for (const auto& row : spec.label_table) {
    double mean_label = 0.0;
    for (const double y : row) mean_label += y;
    mean_label /= k;
    for (const double y : row) acc += loss.base_loss(mean_label, y);
  }
  return acc / static_cast<double>(spec.n_inputs * spec.labels_per_input);
}

}  // namespace subjectivity

#pragma once

#include <cstdint>
#include <vector>

#include "subjectivity/core.hpp"

namespace subjectivity {

// Synthetic multi-label generator: every input carries one label per latent
// subject, so the emitted dataset violates single-valued mapping by
// construction.
struct MultiLabelSpec {
  std::size_t n_inputs = 1;
  std::size_t labels_per_input = 1;                // k latent subjects
  std::vector<std::vector<double>> label_table;    // [input][latent subject]
  double noise_sd = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct MultiLabelData {
  std::vector<Sample> samples;               // input-major, latent-minor order
  std::vector<std::size_t> latent_subjects;  // ground-truth sidecar, never fed to solvers
};

// n_inputs * k samples with x = (input index) and y = table label plus
// centered Gaussian noise. Deterministic under the spec seed.
MultiLabelData multilabel_dataset(const MultiLabelSpec& spec);

// Closed-form gap between the single-map optimum and the per-subject
// optimum: the mean over samples of L(mean label of the input, label).
// Defined for clean labels only (noise_sd must be 0). Under squared loss
// this is the mean per-input label variance.
double confusion_error(const MultiLabelSpec& spec, const LossSpec& loss);

}  // namespace subjectivity

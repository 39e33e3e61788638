#include <algorithm>
#include <cmath>

#include "subjectivity/kernels.hpp"

namespace subjectivity::kernels::detail {

void q_row_scalar(LossKind kind, double lo, double hi, const double* pred,
                  const double* label, const double* weight, double* out, std::size_t n) {
  switch (kind) {
    case LossKind::squared:
      for (std::size_t i = 0; i < n; ++i) {
        const double d = pred[i] - label[i];
        out[i] = std::min(std::max(d * d, lo), hi) * weight[i];
      }
      break;
    case LossKind::absolute:
      for (std::size_t i = 0; i < n; ++i) {
        const double d = std::abs(pred[i] - label[i]);
        out[i] = std::min(std::max(d, lo), hi) * weight[i];
      }
      break;
    case LossKind::zero_one:
      for (std::size_t i = 0; i < n; ++i) {
        const double l0 = std::abs(pred[i] - label[i]) > 0.5 ? 1.0 : 0.0;
        out[i] = std::min(std::max(l0, lo), hi) * weight[i];
      }
      break;
  }
}

std::uint64_t pattern_bits_scalar(const double* values, std::size_t n, double beta) {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (values[i] >= beta) bits |= std::uint64_t{1} << i;
  return bits;
}

}  // namespace subjectivity::kernels::detail

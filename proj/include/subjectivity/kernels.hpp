#pragma once

#include <cstddef>
#include <cstdint>

#include "subjectivity/core.hpp"

namespace subjectivity::kernels {

// Data-parallel inner loops: elementwise basic-loss rows and indicator
// pattern bits. Each has a scalar reference implementation and an AVX2
// variant selected at runtime; both are elementwise IEEE operations, so the
// variants produce bit-identical outputs and the equivalence tests assert
// exact equality. Every reduction in the project stays scalar, in ascending
// index order, to keep reports reproducible.
enum class Backend { scalar, avx2 };

Backend active_backend();
bool backend_supported(Backend b);
void set_backend(Backend b);  // throws std::invalid_argument if unsupported

// out[i] = clamp(L_0(pred[i], label[i]), lo, hi) * weight[i]
void q_row(LossKind kind, double lo, double hi, const double* pred, const double* label,
           const double* weight, double* out, std::size_t n);

// Bit i set iff values[i] >= beta. n must be <= 64.
std::uint64_t pattern_bits(const double* values, std::size_t n, double beta);

namespace detail {
void q_row_scalar(LossKind kind, double lo, double hi, const double* pred,
                  const double* label, const double* weight, double* out, std::size_t n);
std::uint64_t pattern_bits_scalar(const double* values, std::size_t n, double beta);
#if defined(__x86_64__) || defined(_M_X64)
void q_row_avx2(LossKind kind, double lo, double hi, const double* pred,
                const double* label, const double* weight, double* out, std::size_t n);
std::uint64_t pattern_bits_avx2(const double* values, std::size_t n, double beta);
#endif
}  // namespace detail

}  // namespace subjectivity::kernels

// AVX2 variants of the inner-loop kernels. Compiled with -mavx2 and only
// reachable through the runtime dispatch once cpu support is confirmed.
// Every operation here is elementwise IEEE arithmetic, so the outputs are
// bit-identical to the scalar reference.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "subjectivity/kernels.hpp"

namespace subjectivity::kernels::detail {

namespace {

inline __m256d clamp4(__m256d v, __m256d lo, __m256d hi) {
  return _mm256_min_pd(_mm256_max_pd(v, lo), hi);
}

}  // namespace

void q_row_avx2(LossKind kind, double lo, double hi, const double* pred,
                const double* label, const double* weight, double* out, std::size_t n) {
  const __m256d vlo = _mm256_set1_pd(lo);
  const __m256d vhi = _mm256_set1_pd(hi);
  const __m256d sign = _mm256_set1_pd(-0.0);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d one = _mm256_set1_pd(1.0);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d p = _mm256_loadu_pd(pred + i);
    const __m256d y = _mm256_loadu_pd(label + i);
    const __m256d w = _mm256_loadu_pd(weight + i);
    const __m256d d = _mm256_sub_pd(p, y);
    __m256d l0;
    switch (kind) {
      case LossKind::squared:
        l0 = _mm256_mul_pd(d, d);
        break;
      case LossKind::absolute:
        l0 = _mm256_andnot_pd(sign, d);
        break;
      case LossKind::zero_one:
        l0 = _mm256_and_pd(_mm256_cmp_pd(_mm256_andnot_pd(sign, d), half, _CMP_GT_OQ), one);
        break;
      default:
        l0 = _mm256_setzero_pd();
        break;
    }
    _mm256_storeu_pd(out + i, _mm256_mul_pd(clamp4(l0, vlo, vhi), w));
  }
  if (i < n) q_row_scalar(kind, lo, hi, pred + i, label + i, weight + i, out + i, n - i);
}

std::uint64_t pattern_bits_avx2(const double* values, std::size_t n, double beta) {
  const __m256d vb = _mm256_set1_pd(beta);
  std::uint64_t bits = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(values + i);
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(v, vb, _CMP_GE_OQ));
    bits |= static_cast<std::uint64_t>(mask) << i;
  }
  for (; i < n; ++i)
    if (values[i] >= beta) bits |= std::uint64_t{1} << i;
  return bits;
}

}  // namespace subjectivity::kernels::detail

#endif  // x86_64

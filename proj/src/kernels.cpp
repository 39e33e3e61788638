#include "subjectivity/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace subjectivity::kernels {

namespace {

Backend detect_backend() {
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2")) return Backend::avx2;
#endif
  return Backend::scalar;
}

std::atomic<Backend> g_backend{detect_backend()};

}  // namespace

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

bool backend_supported(Backend b) {
  if (b == Backend::scalar) return true;
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

void set_backend(Backend b) {
  if (!backend_supported(b))
    throw std::invalid_argument("kernels::set_backend: backend not supported on this cpu");
  g_backend.store(b, std::memory_order_relaxed);
}

void q_row(LossKind kind, double lo, double hi, const double* pred, const double* label,
           const double* weight, double* out, std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
  if (active_backend() == Backend::avx2) {
    detail::q_row_avx2(kind, lo, hi, pred, label, weight, out, n);
    return;
  }
#endif
  detail::q_row_scalar(kind, lo, hi, pred, label, weight, out, n);
}

std::uint64_t pattern_bits(const double* values, std::size_t n, double beta) {
#if defined(__x86_64__) || defined(_M_X64)
  if (active_backend() == Backend::avx2) return detail::pattern_bits_avx2(values, n, beta);
#endif
  return detail::pattern_bits_scalar(values, n, beta);
}

}  // namespace subjectivity::kernels

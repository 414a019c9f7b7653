#include "fadlab/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "kernels_detail.hpp"

namespace fadlab::kernels {
namespace {

bool host_has_avx2() {
#if defined(FADLAB_HAVE_AVX2_TU) && defined(__GNUC__) && \
    (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const detail::Table* pick_initial() {
  const char* env = std::getenv("FADLAB_KERNELS");
  if (env && std::strcmp(env, "scalar") == 0) return &detail::scalar_table;
#ifdef FADLAB_HAVE_AVX2_TU
  if (host_has_avx2()) return &detail::avx2_table;
#endif
  return &detail::scalar_table;
}

const detail::Table* g_table = pick_initial();

}  // namespace

Backend active_backend() {
#ifdef FADLAB_HAVE_AVX2_TU
  if (g_table == &detail::avx2_table) return Backend::avx2;
#endif
  return Backend::scalar;
}

const char* backend_name() {
  return active_backend() == Backend::avx2 ? "avx2" : "scalar";
}

bool backend_supported(Backend b) {
  if (b == Backend::scalar) return true;
  return host_has_avx2();
}

void set_backend(Backend b) {
  if (!backend_supported(b))
    throw std::runtime_error("kernel backend not supported on this host");
  if (b == Backend::scalar) {
    g_table = &detail::scalar_table;
    return;
  }
#ifdef FADLAB_HAVE_AVX2_TU
  g_table = &detail::avx2_table;
#endif
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  g_table->axpy(a, x, y, n);
}
void axpby(double a, const double* x, double b, const double* y, double* out,
           std::size_t n) {
  g_table->axpby(a, x, b, y, out, n);
}
void mul(const double* x, const double* y, double* out, std::size_t n) {
  g_table->mul(x, y, out, n);
}
double dot(const double* x, const double* y, std::size_t n) {
  return g_table->dot(x, y, n);
}
double dot3(const double* x, const double* y, const double* w, std::size_t n) {
  return g_table->dot3(x, y, w, n);
}
double pow_sum(const double* x, const double* w, double p, std::size_t n) {
  return g_table->pow_sum(x, w, p, n);
}
double max_abs(const double* x, std::size_t n) {
  return g_table->max_abs(x, n);
}
void matvec(const double* A, const double* x, double* y, std::size_t rows,
            std::size_t cols) {
  g_table->matvec(A, x, y, rows, cols);
}
void cmul_mask(double* z, const double* m, std::size_t n) {
  g_table->cmul_mask(z, m, n);
}

}  // namespace fadlab::kernels

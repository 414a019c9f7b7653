// Scalar reference kernels. These define the semantics the SIMD variants are
// tested against; keep them simple.

#include <cmath>
#include <cstddef>

#include "kernels_detail.hpp"

namespace fadlab::kernels::detail {

double pow_abs(double x, double p) {
  const double a = std::fabs(x);
  const int ip = static_cast<int>(p);
  if (static_cast<double>(ip) == p && ip >= 1 && ip <= 8) {
    double r = a;
    switch (ip) {
      case 1: return a;
      case 2: return a * a;
      case 3: return a * a * a;
      case 4: r = a * a; return r * r;
      case 5: r = a * a; return r * r * a;
      case 6: r = a * a; return r * r * r;
      case 7: r = a * a * a; return r * r * a;
      case 8: r = a * a; r = r * r; return r * r;
    }
  }
  return std::pow(a, p);
}

namespace {

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void axpby_scalar(double a, const double* x, double b, const double* y,
                  double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void mul_scalar(const double* x, const double* y, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * y[i];
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double dot3_scalar(const double* x, const double* y, const double* w,
                   std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i] * w[i];
  return s;
}

double pow_sum_scalar(const double* x, const double* w, double p,
                      std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += pow_abs(x[i], p) * w[i];
  return s;
}

double max_abs_scalar(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::fabs(x[i]);
    if (a > m) m = a;
  }
  return m;
}

void matvec_scalar(const double* A, const double* x, double* y,
                   std::size_t rows, std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = A + i * cols;
    double s = 0.0;
    for (std::size_t k = 0; k < cols; ++k) s += row[k] * x[k];
    y[i] = s;
  }
}

void cmul_mask_scalar(double* z, const double* m, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    z[2 * i] *= m[i];
    z[2 * i + 1] *= m[i];
  }
}

}  // namespace

const Table scalar_table = {
    axpy_scalar, axpby_scalar,   mul_scalar,    dot_scalar,      dot3_scalar,
    pow_sum_scalar, max_abs_scalar, matvec_scalar, cmul_mask_scalar};

}  // namespace fadlab::kernels::detail

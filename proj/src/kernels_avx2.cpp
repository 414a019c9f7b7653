// AVX2+FMA kernels. This translation unit is compiled with -mavx2 -mfma and
// is only entered after a runtime cpuid check, so the intrinsics are safe.
// Remainder elements always fall through to scalar tails.

#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "kernels_detail.hpp"

namespace fadlab::kernels::detail {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d yv = _mm256_loadu_pd(y + i);
    yv = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), yv);
    _mm256_storeu_pd(y + i, yv);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void axpby_avx2(double a, const double* x, double b, const double* y,
                double* out, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  const __m256d bv = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d r = _mm256_mul_pd(bv, _mm256_loadu_pd(y + i));
    r = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), r);
    _mm256_storeu_pd(out + i, r);
  }
  for (; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void mul_avx2(const double* x, const double* y, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(x + i),
                                            _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) out[i] = x[i] * y[i];
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd();
  __m256d s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), s0);
    s1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4),
                         _mm256_loadu_pd(y + i + 4), s1);
  }
  for (; i + 4 <= n; i += 4)
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), s0);
  double s = hsum(_mm256_add_pd(s0, s1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double dot3_avx2(const double* x, const double* y, const double* w,
                 std::size_t n) {
  __m256d s0 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xy =
        _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    s0 = _mm256_fmadd_pd(xy, _mm256_loadu_pd(w + i), s0);
  }
  double s = hsum(s0);
  for (; i < n; ++i) s += x[i] * y[i] * w[i];
  return s;
}

const __m256d kSignMask = _mm256_set1_pd(-0.0);

double pow_sum_avx2(const double* x, const double* w, double p,
                    std::size_t n) {
  const int ip = static_cast<int>(p);
  if (static_cast<double>(ip) != p || ip < 1 || ip > 8) {
    // non-integer exponent: no vector pow, defer to the scalar reference
    return scalar_table.pow_sum(x, w, p, n);
  }
  __m256d s = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_andnot_pd(kSignMask, _mm256_loadu_pd(x + i));
    __m256d r = a;
    switch (ip) {
      case 1: break;
      case 2: r = _mm256_mul_pd(a, a); break;
      case 3: r = _mm256_mul_pd(_mm256_mul_pd(a, a), a); break;
      case 4: r = _mm256_mul_pd(a, a); r = _mm256_mul_pd(r, r); break;
      case 5: r = _mm256_mul_pd(a, a); r = _mm256_mul_pd(_mm256_mul_pd(r, r), a); break;
      case 6: r = _mm256_mul_pd(a, a); r = _mm256_mul_pd(_mm256_mul_pd(r, r), r); break;
      case 7: r = _mm256_mul_pd(_mm256_mul_pd(a, a), a);
              r = _mm256_mul_pd(_mm256_mul_pd(r, r), a); break;
      case 8: r = _mm256_mul_pd(a, a); r = _mm256_mul_pd(r, r);
              r = _mm256_mul_pd(r, r); break;
    }
    s = _mm256_fmadd_pd(r, _mm256_loadu_pd(w + i), s);
  }
  double acc = hsum(s);
  for (; i < n; ++i) acc += pow_abs(x[i], p) * w[i];
  return acc;
}

double max_abs_avx2(const double* x, std::size_t n) {
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    m = _mm256_max_pd(m, _mm256_andnot_pd(kSignMask, _mm256_loadu_pd(x + i)));
  __m128d lo = _mm256_castpd256_pd128(m);
  __m128d hi = _mm256_extractf128_pd(m, 1);
  lo = _mm_max_pd(lo, hi);
  double r = _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
  for (; i < n; ++i) {
    const double a = std::fabs(x[i]);
    if (a > r) r = a;
  }
  return r;
}

void matvec_avx2(const double* A, const double* x, double* y, std::size_t rows,
                 std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = A + i * cols;
    __m256d s0 = _mm256_setzero_pd();
    __m256d s1 = _mm256_setzero_pd();
    __m256d s2 = _mm256_setzero_pd();
    __m256d s3 = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 16 <= cols; k += 16) {
      s0 = _mm256_fmadd_pd(_mm256_loadu_pd(row + k),
                           _mm256_loadu_pd(x + k), s0);
      s1 = _mm256_fmadd_pd(_mm256_loadu_pd(row + k + 4),
                           _mm256_loadu_pd(x + k + 4), s1);
      s2 = _mm256_fmadd_pd(_mm256_loadu_pd(row + k + 8),
                           _mm256_loadu_pd(x + k + 8), s2);
      s3 = _mm256_fmadd_pd(_mm256_loadu_pd(row + k + 12),
                           _mm256_loadu_pd(x + k + 12), s3);
    }
    for (; k + 4 <= cols; k += 4)
      s0 = _mm256_fmadd_pd(_mm256_loadu_pd(row + k), _mm256_loadu_pd(x + k),
                           s0);
    double s = hsum(_mm256_add_pd(_mm256_add_pd(s0, s1), _mm256_add_pd(s2, s3)));
    for (; k < cols; ++k) s += row[k] * x[k];
    y[i] = s;
  }
}

void cmul_mask_avx2(double* z, const double* m, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m128d mm = _mm_loadu_pd(m + i);
    const __m256d md = _mm256_set_m128d(_mm_unpackhi_pd(mm, mm),
                                        _mm_unpacklo_pd(mm, mm));
    _mm256_storeu_pd(z + 2 * i,
                     _mm256_mul_pd(_mm256_loadu_pd(z + 2 * i), md));
  }
  for (; i < n; ++i) {
    z[2 * i] *= m[i];
    z[2 * i + 1] *= m[i];
  }
}

}  // namespace

const Table avx2_table = {
    axpy_avx2, axpby_avx2,   mul_avx2,    dot_avx2,      dot3_avx2,
    pow_sum_avx2, max_abs_avx2, matvec_avx2, cmul_mask_avx2};

}  // namespace fadlab::kernels::detail

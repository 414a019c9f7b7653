#pragma once
// Runtime-dispatched arithmetic kernels for the hot inner loops: dense
// matrix-vector products (Hankel transforms), weighted reductions
// (quadrature), and vector updates (time stepping). A scalar reference
// implementation always exists; an AVX2+FMA variant is selected at runtime
// when the host supports it. The two are equivalence-tested against each
// other in tests/test_kernels.cpp.

#include <cstddef>

namespace fadlab::kernels {

enum class Backend { scalar, avx2 };

// Backend chosen at startup (env override: FADLAB_KERNELS=scalar|avx2).
Backend active_backend();
const char* backend_name();
bool backend_supported(Backend b);
// Force a backend (throws std::runtime_error if unsupported on this host).
void set_backend(Backend b);

// y[i] += a*x[i]
void axpy(double a, const double* x, double* y, std::size_t n);

// out[i] = a*x[i] + b*y[i]  (out may alias x or y)
void axpby(double a, const double* x, double b, const double* y, double* out,
           std::size_t n);

// out[i] = x[i]*y[i]  (out may alias)
void mul(const double* x, const double* y, double* out, std::size_t n);

// sum_i x[i]*y[i]
double dot(const double* x, const double* y, std::size_t n);

// sum_i x[i]*y[i]*w[i]
double dot3(const double* x, const double* y, const double* w, std::size_t n);

// sum_i |x[i]|^p * w[i]; fast paths for p in {1,2,3,4,5,6,8}
double pow_sum(const double* x, const double* w, double p, std::size_t n);

// max_i |x[i]|
double max_abs(const double* x, std::size_t n);

// y = A*x with A row-major (rows x cols)
void matvec(const double* A, const double* x, double* y, std::size_t rows,
            std::size_t cols);

// z: n interleaved complex values (re,im); z[k] *= m[k] for a real mask m
void cmul_mask(double* z, const double* m, std::size_t n);

}  // namespace fadlab::kernels

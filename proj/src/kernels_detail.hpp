#pragma once
#include <cstddef>

namespace fadlab::kernels::detail {

struct Table {
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*axpby)(double, const double*, double, const double*, double*,
                std::size_t);
  void (*mul)(const double*, const double*, double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  double (*dot3)(const double*, const double*, const double*, std::size_t);
  double (*pow_sum)(const double*, const double*, double, std::size_t);
  double (*max_abs)(const double*, std::size_t);
  void (*matvec)(const double*, const double*, double*, std::size_t,
                 std::size_t);
  void (*cmul_mask)(double*, const double*, std::size_t);
};

extern const Table scalar_table;
#ifdef FADLAB_HAVE_AVX2_TU
extern const Table avx2_table;
#endif

// |x|^p for integer p by squaring, pow() otherwise; shared by both backends
// for the reduction tails.
double pow_abs(double x, double p);

}  // namespace fadlab::kernels::detail

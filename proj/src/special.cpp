#include "fadlab/special.hpp"

#include <cmath>
#include <stdexcept>

namespace fadlab::special {

double bessel_j(int nu, double x) {
  if (nu < 0) throw std::domain_error("bessel_j: nu must be >= 0");
  if (x < 0) {
    // J_nu(-x) = (-1)^nu J_nu(x)
    const double v = bessel_j(nu, -x);
    return (nu % 2 == 0) ? v : -v;
  }
  switch (nu) {
    case 0: return std::cyl_bessel_j(0.0, x);
    case 1: return std::cyl_bessel_j(1.0, x);
    case 2: {
      // recurrence avoids a third library call path: J2 = (2/x)J1 - J0
      if (x < 1e-8) return x * x / 8.0;
      return 2.0 / x * std::cyl_bessel_j(1.0, x) - std::cyl_bessel_j(0.0, x);
    }
    default: return std::cyl_bessel_j(static_cast<double>(nu), x);
  }
}

double bessel_j_deriv(int nu, double x) {
  if (nu == 0) return -bessel_j(1, x);
  // J_nu' = (J_{nu-1} - J_{nu+1}) / 2
  return 0.5 * (bessel_j(nu - 1, x) - bessel_j(nu + 1, x));
}

std::vector<double> bessel_zeros(int nu, int count) {
  if (nu != 0 && nu != 1)
    throw std::domain_error("bessel_zeros: only orders 0 and 1 are wired");
  std::vector<double> zeros(count);
  const double mu = 4.0 * nu * nu;
  for (int k = 1; k <= count; ++k) {
    // McMahon: beta - (mu-1)/(8 beta) - 4(mu-1)(7mu-31)/(3 (8 beta)^3) - ...
    const double beta = (k + 0.5 * nu - 0.25) * M_PI;
    const double b8 = 8.0 * beta;
    double x = beta - (mu - 1.0) / b8 -
               4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8 * b8 * b8);
    for (int it = 0; it < 50; ++it) {
      const double f = bessel_j(nu, x);
      const double df = bessel_j_deriv(nu, x);
      const double step = f / df;
      x -= step;
      if (std::fabs(step) < 1e-15 * x) break;
    }
    zeros[k - 1] = x;
  }
  return zeros;
}

double sinc(double x) {
  const double a = std::fabs(x);
  if (a >= 0.1) return std::sin(x) / x;
  const double x2 = x * x;
  // 1 - x^2/6 + x^4/120 - x^6/5040 + x^8/362880
  return 1.0 + x2 * (-1.0 / 6.0 +
                     x2 * (1.0 / 120.0 +
                           x2 * (-1.0 / 5040.0 + x2 * (1.0 / 362880.0))));
}

}  // namespace fadlab::special

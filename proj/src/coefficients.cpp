#include "fadlab/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fadlab::coef {
namespace {

constexpr double kThreshold = 0.5;
constexpr int kTerms = 10;

// Maclaurin building blocks (even series in u):
//   s1(u) = sin u / u                   coeffs (-1)^m / (2m+1)!
//   s2(u) = (sin u - u cos u)/u^3       coeffs (-1)^m 2(m+1) / (2m+3)!
//   s3(u) = (sin 2u - 2u)/(2u^3)        coeffs (-1)^(m+1) 2^(2m+2) / (2m+3)!
// h1~ = 2u s1 s2,  h2~ = s3,  h3~ = s1 s2,  h4~ = s1(2u).
struct SeriesTables {
  double s1[kTerms];
  double s2[kTerms];
  double s3[kTerms];
  SeriesTables() {
    double fact = 1.0;  // (2m+1)! running
    for (int m = 0; m < kTerms; ++m) {
      if (m > 0) fact *= (2.0 * m) * (2.0 * m + 1.0);
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      const double f23 = fact * (2.0 * m + 2.0) * (2.0 * m + 3.0);  // (2m+3)!
      s1[m] = sign / fact;
      s2[m] = sign * 2.0 * (m + 1.0) / f23;
      s3[m] = -sign * std::pow(2.0, 2.0 * m + 2.0) / f23;
    }
  }
};
const SeriesTables kS;

double eval_even_series(const double* c, double u) {
  const double u2 = u * u;
  double acc = c[kTerms - 1];
  for (int m = kTerms - 2; m >= 0; --m) acc = c[m] + u2 * acc;
  return acc;
}

double s1_of(double u) {
  return std::fabs(u) < kThreshold ? eval_even_series(kS.s1, u)
                                   : std::sin(u) / u;
}
double s2_of(double u) {
  return std::fabs(u) < kThreshold
             ? eval_even_series(kS.s2, u)
             : (std::sin(u) - u * std::cos(u)) / (u * u * u);
}
double s3_of(double u) {
  return std::fabs(u) < kThreshold
             ? eval_even_series(kS.s3, u)
             : (std::sin(2.0 * u) - 2.0 * u) / (2.0 * u * u * u);
}

}  // namespace

double phi(double r, double u) {
  if (!(r > 0.0)) throw std::domain_error("phi: r must be > 0");
  const double s = std::sin(u);
  return 1.0 + s * s / (r * r);
}

double phi_stable(double v, double u) {
  const double sv = v * s1_of(u);
  return 1.0 + sv * sv;
}

double h_tilde(CoefficientId id, double u) {
  switch (id) {
    case CoefficientId::h1: return 2.0 * u * s1_of(u) * s2_of(u);
    case CoefficientId::h2: return s3_of(u);
    case CoefficientId::h3: return s1_of(u) * s2_of(u);
    case CoefficientId::h4: {
      const double w = 2.0 * u;
      return std::fabs(w) < kThreshold ? eval_even_series(kS.s1, w)
                                       : std::sin(w) / w;
    }
  }
  return 0.0;
}

double h(CoefficientId id, double r, double u) {
  return h_tilde(id, u) / phi(r, u);
}

double h_stable(CoefficientId id, double v, double u) {
  return h_tilde(id, u) / phi_stable(v, u);
}

double h_tilde_deriv(CoefficientId id, int j, double u, double* richardson_gap) {
  if (j < 0 || j > 3) throw std::domain_error("h_tilde_deriv: j in 0..3");
  if (j == 0) {
    if (richardson_gap) *richardson_gap = 0.0;
    return h_tilde(id, u);
  }
  auto f = [&](double x) { return h_tilde(id, x); };
  // 4th-order central stencils; truncation ~ h^4, rounding ~ eps/h^j
  auto stencil = [&](double h) -> double {
    switch (j) {
      case 1:
        return (-f(u + 2 * h) + 8 * f(u + h) - 8 * f(u - h) + f(u - 2 * h)) /
               (12 * h);
      case 2:
        return (-f(u + 2 * h) + 16 * f(u + h) - 30 * f(u) + 16 * f(u - h) -
                f(u - 2 * h)) /
               (12 * h * h);
      default:
        return (f(u + 3 * h) - 8 * f(u + 2 * h) + 13 * f(u + h) -
                13 * f(u - h) + 8 * f(u - 2 * h) - f(u - 3 * h)) /
               (8 * h * h * h);
    }
  };
  static const double kStep[4] = {0.0, 2e-3, 6e-3, 2e-2};
  const double h0 = kStep[j];
  const double d1 = stencil(h0);
  const double d2 = stencil(0.5 * h0);
  if (richardson_gap) *richardson_gap = std::fabs(d2 - d1) / 15.0;
  return (16.0 * d2 - d1) / 15.0;
}

int decay_exponent(CoefficientId id, int j) {
  switch (id) {
    case CoefficientId::h1: return 2;
    case CoefficientId::h2: return j == 0 ? 2 : 3;
    case CoefficientId::h3: return 3;
    case CoefficientId::h4: return 1;
  }
  return 0;
}

RatioReport decay_margin(CoefficientId id, int j,
                         std::span<const double> u_grid) {
  RatioReport rep;
  rep.lhs_label = "|d^j h~| <u>^k";
  rep.rhs_label = "1";
  rep.params.reserve(u_grid.size());
  rep.ratios.reserve(u_grid.size());
  const int k = decay_exponent(id, j);
  for (double u : u_grid) {
    const double d = h_tilde_deriv(id, j, u);
    const double w = std::pow(1.0 + u * u, 0.5 * k);
    rep.params.push_back(u);
    rep.ratios.push_back(std::fabs(d) * w);
  }
  rep.finalize();
  rep.regression_constant = rep.max;
  return rep;
}

double big_i(double z) {
  if (z < 0.0) return -big_i(-z);
  const double k = std::floor(z / M_PI);
  return 2.0 * k + 1.0 - std::cos(z - k * M_PI);
}

double big_i_inv(double y) {
  if (y < 0.0) throw std::domain_error("big_i_inv: y must be >= 0");
  // I maps [k pi, (k+1) pi] onto [2k, 2k+2]
  const double k = std::floor(0.5 * y);
  double c = 2.0 * k + 1.0 - y;  // cos(z - k pi)
  c = std::clamp(c, -1.0, 1.0);
  return k * M_PI + std::acos(c);
}

}  // namespace fadlab::coef

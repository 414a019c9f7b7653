#pragma once
// Closed-form, series-stabilized evaluation of the nonlinear coefficients
//
//   h1~(u) = 2 sin u (sin u - u cos u) / u^3     h2~(u) = (sin 2u - 2u)/(2u^3)
//   h3~(u) =   sin u (sin u - u cos u) / u^4     h4~(u) = sin 2u / (2u)
//
//   Phi(r,u) = 1 + sin^2 u / r^2,   h_i(r,u) = h_i~(u) / Phi(r,u),
//
// plus the running integral I(z) = int_0^z |sin w| dw and the decay-envelope
// verification sup |d^j h_i~| <u>^k. All removable singularities at u = 0 are
// evaluated by Maclaurin series below |u| = u_threshold.

#include <span>

#include "fadlab/report.hpp"

namespace fadlab::coef {

enum class CoefficientId { h1, h2, h3, h4 };

struct SeriesSwitch {
  double u_threshold = 0.5;
  int series_terms = 10;  // terms of the even series; ~1e-24 tail at 1/2
};

double phi(double r, double u);          // throws std::domain_error for r <= 0
double phi_stable(double v, double u);   // v = u/r; 1 + v^2 (sin u / u)^2

double h_tilde(CoefficientId id, double u);
double h(CoefficientId id, double r, double u);
double h_stable(CoefficientId id, double v, double u);

// j-th u-derivative of h_tilde, j in 0..3, high-order central differences
// with Richardson-verified step. `richardson_gap` (optional out) receives the
// |D(h) - D(h/2)| extrapolation discrepancy.
double h_tilde_deriv(CoefficientId id, int j, double u,
                     double* richardson_gap = nullptr);

// sup over `u_grid` of |d^j h_id~(u)| * <u>^k with the paper's envelope
// exponent k for each coefficient (k depends on j for h2).
RatioReport decay_margin(CoefficientId id, int j, std::span<const double> u_grid);

// envelope exponent used by decay_margin
int decay_exponent(CoefficientId id, int j);

double big_i(double z);      // I(z), odd, exact piecewise closed form
double big_i_inv(double y);  // inverse of I restricted to [0, inf)

}  // namespace fadlab::coef

#pragma once
// Bessel helpers for the Fourier-Bessel machinery: J_nu evaluation (orders 0
// and 1 delegated to the standard library), derivatives, and positive zeros.

#include <vector>

namespace fadlab::special {

// J_nu(x) for integer nu >= 0
double bessel_j(int nu, double x);

// d/dx J_nu(x)
double bessel_j_deriv(int nu, double x);

// First `count` positive zeros of J_nu, nu in {0, 1}. McMahon expansion
// start, Newton polish to ~1e-14 relative.
std::vector<double> bessel_zeros(int nu, int count);

// sin(x)/x, series below |x| = 1e-1
double sinc(double x);

}  // namespace fadlab::special

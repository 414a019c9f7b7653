#include "fadlab/dyadic.hpp"

#include <cmath>
#include <stdexcept>

namespace fadlab::spectral {
namespace {

double mollifier(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

}  // namespace

double theta_cut(double s) {
  if (s <= 1.0) return 1.0;
  if (s >= 2.0) return 0.0;
  const double a = mollifier(2.0 - s);
  const double b = mollifier(s - 1.0);
  return a / (a + b);
}

double chi_cut(double s) { return theta_cut(s) - theta_cut(2.0 * s); }

DyadicPartition::DyadicPartition(int emin, int emax) {
  if (emin > emax) throw std::domain_error("DyadicPartition: emin > emax");
  lambda_min = std::ldexp(1.0, emin);
  lambda_max = std::ldexp(1.0, emax);
  for (int e = emin; e <= emax; ++e) lambdas.push_back(std::ldexp(1.0, e));
}

DyadicPartition DyadicPartition::standard() { return DyadicPartition(-8, 8); }

bool DyadicPartition::contains(double lambda) const {
  for (double l : lambdas)
    if (std::fabs(l - lambda) <= 1e-12 * lambda) return true;
  return false;
}

double DyadicPartition::coverage(double s) const {
  double acc = 0.0;
  for (double l : lambdas) acc += chi_cut(s / l);
  return acc;
}

}  // namespace fadlab::spectral

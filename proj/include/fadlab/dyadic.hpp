#pragma once
// Dyadic Littlewood-Paley machinery: the smooth cutoff generator chi with
// supp chi in (1/2, 2) and exact telescoping sum_j chi(2^-j s) = 1, and the
// band set lambda in 2^Z restricted to [lambda_min, lambda_max].

#include <vector>

namespace fadlab::spectral {

// theta(s): smooth, = 1 for s <= 1, = 0 for s >= 2 (exp(-1/x) mollifier)
double theta_cut(double s);
// chi(s) = theta(s) - theta(2s); supp in (1/2, 2)
double chi_cut(double s);

struct DyadicPartition {
  double lambda_min = 0.0;  // 2^emin
  double lambda_max = 0.0;  // 2^emax
  std::vector<double> lambdas;

  // bands 2^emin .. 2^emax inclusive
  DyadicPartition(int emin, int emax);
  static DyadicPartition standard();  // 2^-8 .. 2^8

  bool contains(double lambda) const;
  // sum over the band set of chi(s / lambda); equals 1 exactly on
  // [lambda_min, lambda_max]
  double coverage(double s) const;
};

}  // namespace fadlab::spectral

#pragma once
// Lp norms, Littlewood-Paley band projections, homogeneous Besov norms
// B^s_{p,1} of radial profiles on R^2 / R^4, and the data norm D.

#include "fadlab/dyadic.hpp"
#include "fadlab/grid.hpp"
#include "fadlab/hankel.hpp"
#include "fadlab/report.hpp"

namespace fadlab::spectral {

class BandError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BesovSpec {
  double s = 0.0;
  double p = 2.0;
  double q = 1.0;  // the artifact only uses q = 1
  int n = 4;
};

struct BesovResult {
  double value = 0.0;
  double tail = 0.0;  // L2 mass fraction outside the partition's coverage
};

// ||f||_{L^p(R^n)} = (sigma_{n-1} int |f|^p r^{n-1} dr)^{1/p}; p = inf -> max.
// p = 2 on bessel grids goes through the natural r dr rule (exact discrete
// Plancherel with the transform pair).
double lp_norm(const RadialProfile& f, double p);

// S_lambda f = Hankel^{-1}[ chi(rho/lambda) Hankel f ]
RadialProfile band_project(const RadialProfile& f, double lambda,
                           const DyadicPartition& part);

// sum_lambda lambda^s ||S_lambda f||_{L^p}; q = 1 only.
BesovResult besov_norm(const RadialProfile& f, const BesovSpec& spec,
                       const DyadicPartition& part);

// same but starting from the already-transformed spectrum (frequency samples)
BesovResult besov_norm_hat(const RadialProfile& fhat, const BesovSpec& spec,
                           const DyadicPartition& part);

// ||v0||_{B^2_{2,1} ^ B^1_{2,1}} + ||v1||_{B^1_{2,1} ^ B^0_{2,1}} on R^4,
// intersection norms as sums.
double data_norm_D(const RadialProfile& v0, const RadialProfile& v1,
                   const DyadicPartition& part);

// besov(v4, (s,p,1,4)) / besov(r^{2/p-1} u2, (s,p,1,2)) with v4 = u2 / r
// resampled onto grid4's nodes. Returns 0/0 -> 0 for the zero profile.
double norm_transition_ratio(const RadialProfile& u2, const BesovSpec& spec,
                             const GridPtr& grid4, const DyadicPartition& part);

}  // namespace fadlab::spectral

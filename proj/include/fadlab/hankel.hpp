#pragma once
// Discrete Hankel transform as a Fourier-Bessel series on [0, R], realizing
// the radial Fourier transform on R^n:
//
//   fhat(rho) = (2 pi)^{n/2} rho^{-nu} H_nu[r^nu f](rho),   nu = n/2 - 1,
//
// with H_nu the symmetric-kernel Hankel transform. Nodes sit at scaled zeros
// of J_nu, frequencies at rho_k = j_k / R, and the kernel matrix
// J_nu(j_i j_k / S) is shared between the forward and inverse directions, so
// the pair round-trips to ~1e-13 on smooth decaying profiles.
//
// Transforms are immutable and memoized per grid; apply() is a dense matvec
// through the kernels layer.

#include <memory>

#include "fadlab/grid.hpp"

namespace fadlab::spectral {

class HankelTransform {
 public:
  // memoized; grid must be a bessel grid
  static std::shared_ptr<const HankelTransform> get(const GridPtr& grid);

  const GridPtr& grid() const { return grid_; }

  // f sampled on grid nodes -> fhat sampled on grid frequencies
  RadialProfile forward(const RadialProfile& f) const;
  // fhat sampled on grid frequencies -> f sampled on grid nodes
  RadialProfile inverse(const RadialProfile& fhat) const;

  // raw vector versions (size = grid size)
  void forward(const double* f, double* fhat) const;
  void inverse(const double* fhat, double* f) const;

 private:
  explicit HankelTransform(GridPtr grid);
  GridPtr grid_;
  // scratch-free scaling vectors
  std::vector<double> fwd_in_, fwd_out_, inv_in_, inv_out_;
};

using HankelPtr = std::shared_ptr<const HankelTransform>;

}  // namespace fadlab::spectral

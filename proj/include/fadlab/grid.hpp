#pragma once
// Radial grids on (0, R] for profiles on R^2 or R^4, with quadrature weights
// for the r^{n-1} dr measure.
//
// Two kinds:
//  - bessel: nodes at scaled zeros of J_{n/2-1}; carries the Fourier-Bessel
//    quadrature used by the spectral machinery. This is the grid the Hankel
//    transform operates on.
//  - uniform_cell: cell-centered nodes (i+1/2) dr for the finite-difference
//    evolution; midpoint weights.
//
// Grids are immutable and shared; `bessel()`/`uniform()` memoize per
// (dim, cutoff, n) in a process-wide cache.

#include <memory>
#include <stdexcept>
#include <vector>

namespace fadlab::spectral {

class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GridKind { bessel, uniform_cell };

struct RadialGrid {
  int dim = 4;          // n in {2, 4}
  double cutoff = 0.0;  // R
  GridKind kind = GridKind::bessel;
  std::vector<double> nodes;    // r_i, strictly increasing, > 0
  std::vector<double> weights;  // sum w_i f(r_i) ~ int_0^R f r^{n-1} dr
  // bessel grids only:
  std::vector<double> jzeros;     // j_{nu,1} .. j_{nu,N+1}
  double big_s = 0.0;             // j_{nu,N+1}
  std::vector<double> w_rdr;      // natural weights for int G(r) r dr
  std::vector<double> freqs;      // rho_k = j_k / R (the conjugate grid)
  std::vector<double> wf_rdr;     // natural weights for int G(rho) rho drho
  std::vector<double> wf_full;    // freq-side rho^{n-1} drho weights
  // symmetric Fourier-Bessel kernel J_nu(j_i j_k / S), row-major; shared
  // with the Hankel transform so it is built exactly once per grid
  std::vector<double> kernel;

  int order() const { return dim / 2 - 1; }  // Bessel order nu
  std::size_t size() const { return nodes.size(); }
  double spacing() const;  // uniform grids: dr; bessel: mean node gap

  static std::shared_ptr<const RadialGrid> bessel(int dim, double cutoff,
                                                  int n_nodes);
  static std::shared_ptr<const RadialGrid> uniform(int dim, double cutoff,
                                                   int n_nodes);
};

using GridPtr = std::shared_ptr<const RadialGrid>;

struct RadialProfile {
  GridPtr grid;
  std::vector<double> samples;

  RadialProfile() = default;
  explicit RadialProfile(GridPtr g)
      : grid(std::move(g)), samples(grid->size(), 0.0) {}
  template <typename F>
  RadialProfile(GridPtr g, F&& f) : grid(std::move(g)) {
    samples.reserve(grid->size());
    for (double r : grid->nodes) samples.push_back(f(r));
  }
  std::size_t size() const { return samples.size(); }
};

// Resample a profile onto another grid by local quintic Lagrange
// interpolation in r (zero beyond the source cutoff).
RadialProfile resample(const RadialProfile& f, const GridPtr& target);

}  // namespace fadlab::spectral

#pragma once
// Surrogate Tataru-space machinery on sampled spacetime fields w(t, r):
// the (t, x) Fourier transform (FFT in t composed with the order-1 Hankel
// transform in r), cone-band multipliers A_lambda / B_mu, the X^{1/2}, Y and
// F-surrogate norms, and the composite F / |grad|F / X norms for n = 4.
//
// The F_lambda surrogate minimizes x_half(w^{<mu0}) + y(w^{>mu0}) over the
// one-parameter threshold family mu0 in 2^Z cap [lambda 2^-10, lambda]; this
// upper-bounds the true infimum-over-decompositions norm, and every probe is
// stated for the surrogate.

#include <complex>
#include <functional>
#include <vector>

#include "fadlab/dyadic.hpp"
#include "fadlab/grid.hpp"
#include "fadlab/report.hpp"

namespace fadlab::st {

struct TimeWindow {
  double t0 = 0.0;
  double t1 = 0.0;
  int nt = 0;              // uniform samples, powers of two preferred
  double taper_frac = 0.1; // smooth taper width at each end, fraction of span

  double span() const { return t1 - t0; }
  double dt() const { return span() / nt; }
  double time(int j) const { return t0 + j * dt(); }
  // smooth window mass: 1 in the interior, mollifier ramps in the tapers
  double mask(double t) const;
  bool interior(double t) const {
    const double w = taper_frac * span();
    return t >= t0 + w && t <= t1 - w;
  }
};

struct SpacetimeField {
  TimeWindow window;
  spectral::GridPtr rgrid;      // bessel R^4 grid
  std::vector<double> samples;  // [j_t * nr + i_r]

  SpacetimeField() = default;
  SpacetimeField(const TimeWindow& w, spectral::GridPtr g);
  double& at(int jt, int ir) { return samples[jt * rgrid->size() + ir]; }
  double at(int jt, int ir) const { return samples[jt * rgrid->size() + ir]; }
  std::size_t nr() const { return rgrid->size(); }
};

struct SpacetimeSpectrum {
  TimeWindow window;
  spectral::GridPtr rgrid;
  std::vector<std::complex<double>> data;  // [k_tau * nr + j_rho], FFT order
  std::vector<double> taus;                // signed tau_k in FFT order
  double taper_fraction = 0.0;  // L2 mass removed by the window taper

  std::size_t nr() const { return rgrid->size(); }
  double modulation(int k, int j) const;  // |tau^2 - rho^2| / |(tau, rho)|
  double magnitude(int k, int j) const;   // sqrt(tau^2 + rho^2)
};

// window, FFT in t, Hankel in r; throws ResolutionError when more than 5% of
// the L2 mass sits in the top octave of the tau range (unresolved)
SpacetimeSpectrum st_transform(const SpacetimeField& w);
SpacetimeField st_inverse(const SpacetimeSpectrum& s);

// pointwise multiplier m(tau, rho) applied in place
void apply_multiplier(SpacetimeSpectrum& s,
                      const std::function<double(double, double)>& m);

SpacetimeSpectrum a_band(const SpacetimeSpectrum& s, double lambda);
SpacetimeSpectrum b_band(const SpacetimeSpectrum& s, double mu);
// cumulative tilde-B_mu band: modulation <= mu (theta mask)
SpacetimeSpectrum b_below(const SpacetimeSpectrum& s, double mu);

// L^2_{t,x} by Plancherel, no inverse transform
double l2_norm(const SpacetimeSpectrum& s);
// ||w(t)||_{L^2_x} per time slice (partial inverse in t only);
// interior_only drops the tapered margins
std::vector<double> l2x_slices(const SpacetimeSpectrum& s);

double x_half_norm(const SpacetimeSpectrum& w_lam, double lambda);
double y_norm(const SpacetimeSpectrum& w_lam, double lambda);

struct FSurrogate {
  double value = 0.0;
  double mu0 = 0.0;
  double x_part = 0.0;
  double y_part = 0.0;
};
FSurrogate f_norm_surrogate(const SpacetimeSpectrum& w_lam, double lambda);

SurrogateNormReport composite_x_norm(const SpacetimeSpectrum& s,
                                     const spectral::DyadicPartition& part);
SurrogateNormReport composite_x_norm(const SpacetimeField& w,
                                     const spectral::DyadicPartition& part);

// mixed L^q_t L^r_x norm of the physical field over the untapered interior;
// r_exp may be infinity. weight_r multiplies the profile by r first (the
// ||r v||_{L^q L^inf} norms of the radial estimates).
double lqlr_norm(const SpacetimeField& w, double q, double r_exp,
                 bool weight_r = false);

// spectrum with samples env(|tau|, rho) (real, symmetric in tau, so the
// physical field is real and even in t)
SpacetimeSpectrum synthesize_spectrum(
    const TimeWindow& win, const spectral::GridPtr& grid,
    const std::function<double(double, double)>& env);

// synthesize a real, even-in-t packet from a closed-form spectral envelope
// env(tau, rho) >= 0 (applied symmetrically in tau)
SpacetimeField synthesize_packet(
    const TimeWindow& win, const spectral::GridPtr& grid,
    const std::function<double(double, double)>& env);

// pointwise product field (same window/grid)
SpacetimeField product(const SpacetimeField& a, const SpacetimeField& b);
// w *= r^power
void scale_by_r_power(SpacetimeField& w, int power);

}  // namespace fadlab::st

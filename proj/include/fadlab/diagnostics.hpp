#pragma once
// Checkable identities and bounds on states and trajectories: the conserved
// energy, the I(z) pointwise-bound chain, the null-form identity, the
// scale-invariant-model covariance, and the scattering fit.

#include <functional>

#include "fadlab/besov.hpp"
#include "fadlab/evolution.hpp"
#include "fadlab/report.hpp"

namespace fadlab::diag {

// Spacetime field with closed-form derivatives; oracle input for the
// identity checks.
struct AnalyticField {
  std::function<double(double, double)> w, wt, wr, wtt, wrr;
};

// w = A exp(-a r^2 - b t^2)
AnalyticField gaussian_field(double amp, double a, double b);
// w = A r exp(-a r^2) cos(omega t)
AnalyticField r_gauss_cos_field(double amp, double a, double omega);
// w = A r exp(-a r^2) (static)
AnalyticField r_gauss_field(double amp, double a);

// E[u] with per-part breakdown; u-form states only. Cell-centered midpoint
// quadrature with Euler-Maclaurin end corrections at the axis.
EnergyReport energy(const evol::FieldState& state);
// plain midpoint version; the discrete bound chain below compares against
// this one so the inequalities are exact algebra
EnergyReport energy_midpoint(const evol::FieldState& state);

struct PointwiseBoundReport {
  double max_abs_u = 0.0;
  double energy = 0.0;          // midpoint-rule energy of the state
  double implied_bound = 0.0;   // I^{-1}(2 E)
  // discrete Cauchy-Schwarz: max_i [ Itilde_i - sqrt(A_i B_i) ]; exact
  // algebra, must be <= 0 up to roundoff
  double chain_violation = -1.0;
  // max(A_inf - 2E, B_inf - 2E); exact algebra, <= 0 up to roundoff
  double ab_violation = -1.0;
  // max_i [ |I(u_i)| - Itilde_i ]; quadrature-coupled, small but not exact
  double i_gap = 0.0;
};
PointwiseBoundReport pointwise_bound_check(const evol::FieldState& state);

// residual of v_t^2 - v_r^2 + Box(v^2/2) - v Box v by second-order finite
// differences on [0,tmax] x (0,rmax]; the two first-order radial-operator
// contributions cancel identically (v d_r v = d_r(v^2/2)) and are fused out,
// which keeps the order for fields ~ r at the axis.
ConvergenceReport nullform_residual(const AnalyticField& v, double tmax,
                                    double rmax,
                                    const std::vector<int>& resolutions);

// max over a sample lattice of |N[u_lam](t,r) - (1/lam) N[u](t/lam, r/lam)|
// relative to max |N[u_lam]|, where N is the scale-invariant-model operator
// and u_lam = lam u(t/lam, r/lam); analytic derivatives, so the result sits
// at roundoff level.
double scaling_covariance_residual(const AnalyticField& u, double lambda,
                                   double tmax, double rmax, int samples);

// v_plus := free evolution pinned at the final snapshot; defect(t) is the
// D-norm of the difference state, reported on snapshots with t <= 0.9 T.
ScatteringReport scattering_fit(const evol::Trajectory& traj,
                                const spectral::GridPtr& grid4,
                                const spectral::DyadicPartition& part);

}  // namespace fadlab::diag

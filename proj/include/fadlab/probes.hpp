#pragma once
// Empirical "<~" probes: ratio statistics for the Besov product/algebra
// estimates, the radial Sobolev bound, the Strichartz family, the nonlinear
// L^1-Besov bound on trajectories, and the trilinear spacetime estimate.
// Probes report constants; they never assert universal ones.

#include <cstdint>
#include <span>

#include "fadlab/besov.hpp"
#include "fadlab/evolution.hpp"
#include "fadlab/report.hpp"
#include "fadlab/spacetime.hpp"

namespace fadlab::probes {

enum class Inequality {
  nonlin,     // || h2 v^3 + h3 v^5 + h1 v^3 v_r ||_{L1(B1 ^ B0)} <~ ||v||_Xt^3
  prod,       // Besov product estimate, s = 1, (p1,q1) = (p2,q2) = (4,4)
  algebra_y,  // Y = B^2_{2,1} ^ B^1_{2,1}(R^4) algebra bound
  r_weight,   // || r w1 w2 ||_Y <~ ||w1||_Y ||w2||_Y
  sin_power,  // || (sin(rv)/r)^{2k} ||_Y <~ C^k ||v||_Y^{2k}, k = 1..3
  sob,        // || f ||_inf <~ || f ||_{B^{n/2}_{2,1}}
  rad_sob     // || r f_lam ||_inf <~ lam || f_lam ||_{L2}, slope 1 in lam
};

struct ProbeContext {
  spectral::GridPtr grid4;             // bessel R^4 working grid
  spectral::GridPtr grid4_wide;        // larger-R grid for low-lambda bands
  spectral::DyadicPartition part = spectral::DyadicPartition::standard();
  int family_size = 50;
  std::uint64_t seed = 2026;
  double amplitude = 1.0;
  std::span<const evol::Trajectory> trajectories;  // nonlin only
};

// seeded family of even, smooth, rapidly decaying profiles; max_modulation
// caps the cos(omega r) factor (0 gives pure bumps)
std::vector<spectral::RadialProfile> profile_family(
    const spectral::GridPtr& grid, int count, std::uint64_t seed,
    double amplitude = 1.0, double max_modulation = 4.0);

// || f ||_Y = || f ||_{B^2_{2,1}} + || f ||_{B^1_{2,1}} on R^4
double y_space_norm(const spectral::RadialProfile& f,
                    const spectral::DyadicPartition& part);

RatioReport inequality_probe(Inequality which, const ProbeContext& ctx);

// trajectory X~ norm: || dv ||_{Linf_t (B1 ^ B0)} + || dv ||_{L2_t (B^{1/6}_{6,1} ^ B^{-5/6}_{6,1})}
double xtilde_norm(const evol::Trajectory& traj,
                   const spectral::GridPtr& grid4,
                   const spectral::DyadicPartition& part);

// L^1_t (B^1_{2,1} ^ B^0_{2,1}) of h1 v^3 v_r + h2 v^3 + h3 v^5
double nonlin_l1_besov(const evol::Trajectory& traj,
                       const spectral::GridPtr& grid4,
                       const spectral::DyadicPartition& part);

// Strichartz / radial-improved probes on free-wave bands. Throws
// std::domain_error naming the violated inequality for inadmissible pairs.
// rv = true probes || r v ||_{L^q L^inf} / (lam^{1-1/q} F_lam).
RatioReport strichartz_probe(double q, double r_exp, bool rv,
                             const st::TimeWindow& win,
                             const spectral::GridPtr& grid,
                             std::span<const double> lambdas,
                             const spectral::DyadicPartition& part);

struct TrilinearOptions {
  int trials = 100;
  int max_sep_log2 = 6;    // lambda/nu separations up to 2^6
  int max_lambda_log2 = 2; // top band 2^this (keeps r^2 u v w resolved)
  std::uint64_t seed = 2026;
};
// composite_X(r^2 u v w) / prod composite_X over dyadically localized packet
// triples nu <= mu <= lambda; params = separation lambda/nu
RatioReport trilinear_probe(const st::TimeWindow& win,
                            const spectral::GridPtr& grid,
                            const spectral::DyadicPartition& part,
                            const TrilinearOptions& opt);

// || sin(alpha u) / r ||_X / || v ||_X on small packets (u = r v); rejects
// packets with composite norm above 0.5
RatioReport sin_composition_probe(double alpha, const st::TimeWindow& win,
                                  const spectral::GridPtr& grid,
                                  const spectral::DyadicPartition& part,
                                  int trials, std::uint64_t seed);

// exploratory: || r u v ||_X / (||u||_X ||v||_X); findings reported only
RatioReport bilinear_probe(const st::TimeWindow& win,
                           const spectral::GridPtr& grid,
                           const spectral::DyadicPartition& part, int trials,
                           std::uint64_t seed);

// norm-transition family: besov(u2/r on R^4) / besov(r^{2/p-1} u2 on R^2)
RatioReport norm_transition_probe(const spectral::GridPtr& grid2,
                                  const spectral::GridPtr& grid4,
                                  const spectral::BesovSpec& spec,
                                  const spectral::DyadicPartition& part,
                                  int count, std::uint64_t seed);

}  // namespace fadlab::probes

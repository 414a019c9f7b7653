#include "fadlab/probes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "fadlab/coefficients.hpp"
#include "fadlab/diagnostics.hpp"
#include "fadlab/special.hpp"

namespace fadlab::probes {
namespace {

using spectral::BesovSpec;
using spectral::DyadicPartition;
using spectral::GridPtr;
using spectral::RadialProfile;

constexpr double kInf = std::numeric_limits<double>::infinity();

RadialProfile pointwise_product(const RadialProfile& a,
                                const RadialProfile& b) {
  RadialProfile out(a.grid);
  for (std::size_t i = 0; i < out.size(); ++i)
    out.samples[i] = a.samples[i] * b.samples[i];
  return out;
}

}  // namespace

std::vector<RadialProfile> profile_family(const GridPtr& grid, int count,
                                          std::uint64_t seed,
                                          double amplitude,
                                          double max_modulation) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uw(0.6, 3.0);
  std::uniform_real_distribution<double> uo(0.0, max_modulation);
  std::uniform_real_distribution<double> ua(0.3, 1.0);
  std::uniform_real_distribution<double> uc(-0.5, 1.0);
  std::vector<RadialProfile> fam;
  fam.reserve(count);
  for (int m = 0; m < count; ++m) {
    const double w = uw(rng);
    const double om = uo(rng);
    const double amp = amplitude * ua(rng);
    const double a2 = uc(rng);
    fam.emplace_back(grid, [=](double r) {
      const double x = r / w;
      return amp * (1.0 + a2 * x * x) * std::exp(-x * x) * std::cos(om * r);
    });
  }
  return fam;
}

double y_space_norm(const RadialProfile& f, const DyadicPartition& part) {
  auto ht = spectral::HankelTransform::get(f.grid);
  const RadialProfile fh = ht->forward(f);
  return spectral::besov_norm_hat(fh, {2.0, 2.0, 1.0, 4}, part).value +
         spectral::besov_norm_hat(fh, {1.0, 2.0, 1.0, 4}, part).value;
}

namespace {

RatioReport prod_probe(const ProbeContext& ctx) {
  RatioReport rep;
  rep.lhs_label = "||fg||_{B1_{2,1}}";
  rep.rhs_label = "||f||_{L4}||g||_{B1_{4,1}} + ||g||_{L4}||f||_{B1_{4,1}}";
  auto fam = profile_family(ctx.grid4, ctx.family_size, ctx.seed);
  const BesovSpec b141{1.0, 4.0, 1.0, 4};
  const BesovSpec b121{1.0, 2.0, 1.0, 4};
  for (std::size_t i = 0; i + 1 < fam.size(); i += 2) {
    const auto& f = fam[i];
    const auto& g = fam[i + 1];
    const double lhs =
        spectral::besov_norm(pointwise_product(f, g), b121, ctx.part).value;
    const double rhs =
        spectral::lp_norm(f, 4.0) * spectral::besov_norm(g, b141, ctx.part).value +
        spectral::lp_norm(g, 4.0) * spectral::besov_norm(f, b141, ctx.part).value;
    if (rhs == 0.0) {
      ++rep.skipped;
      continue;
    }
    rep.params.push_back(static_cast<double>(i));
    rep.ratios.push_back(lhs / rhs);
  }
  rep.finalize();
  rep.regression_constant = rep.max;
  return rep;
}

RatioReport algebra_probe(const ProbeContext& ctx, bool r_weighted) {
  RatioReport rep;
  rep.lhs_label = r_weighted ? "||r w1 w2||_Y" : "||w1 w2||_Y";
  rep.rhs_label = "||w1||_Y ||w2||_Y";
  auto fam = profile_family(ctx.grid4, ctx.family_size, ctx.seed);
  for (std::size_t i = 0; i + 1 < fam.size(); i += 2) {
    const auto& f = fam[i];
    const auto& g = fam[i + 1];
    RadialProfile p = pointwise_product(f, g);
    if (r_weighted)
      for (std::size_t k = 0; k < p.size(); ++k)
        p.samples[k] *= p.grid->nodes[k];
    const double rhs =
        y_space_norm(f, ctx.part) * y_space_norm(g, ctx.part);
    if (rhs == 0.0) {
      ++rep.skipped;
      continue;
    }
    rep.params.push_back(static_cast<double>(i));
    rep.ratios.push_back(y_space_norm(p, ctx.part) / rhs);
  }
  rep.finalize();
  rep.regression_constant = rep.max;
  return rep;
}

RatioReport sin_power_probe(const ProbeContext& ctx) {
  RatioReport rep;
  rep.lhs_label = "||(sin(rv)/r)^{2k}||_Y^{1/k}";
  rep.rhs_label = "C ||v||_Y^2";
  auto fam = profile_family(ctx.grid4, ctx.family_size / 3 + 1, ctx.seed,
                            ctx.amplitude);
  for (auto& v : fam) {
    // normalize to ||v||_Y = 1/2 so the series regime of the bound applies
    const double ny = y_space_norm(v, ctx.part);
    if (ny == 0.0) {
      ++rep.skipped;
      continue;
    }
    for (double& s : v.samples) s *= 0.5 / ny;
    for (int k = 1; k <= 3; ++k) {
      RadialProfile p(v.grid);
      for (std::size_t i = 0; i < p.size(); ++i) {
        const double r = p.grid->nodes[i];
        const double u = r * v.samples[i];
        const double s = v.samples[i] * special::sinc(u);  // sin(rv)/r
        p.samples[i] = std::pow(s * s, k);
      }
      const double lhs = y_space_norm(p, ctx.part);
      const double rhs = std::pow(0.5, 2 * k);  // ||v||_Y^{2k}
      rep.params.push_back(k);
      // kth root gives the geometric constant of the bound
      rep.ratios.push_back(std::pow(lhs / rhs, 1.0 / k));
    }
  }
  rep.finalize();
  rep.regression_constant = rep.max;
  return rep;
}

RatioReport sob_probe(const ProbeContext& ctx) {
  RatioReport rep;
  rep.lhs_label = "||f||_inf";
  rep.rhs_label = "||f||_{B^{n/2}_{2,1}}";
  // pure bump family: the embedding ratio is dilation-invariant there, so
  // the recorded constant is meaningful
  auto fam = profile_family(ctx.grid4, ctx.family_size, ctx.seed,
                            ctx.amplitude, 0.7);
  const BesovSpec spec{0.5 * ctx.grid4->dim, 2.0, 1.0, ctx.grid4->dim};
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const double rhs = spectral::besov_norm(fam[i], spec, ctx.part).value;
    if (rhs == 0.0) {
      ++rep.skipped;
      continue;
    }
    rep.params.push_back(static_cast<double>(i));
    rep.ratios.push_back(spectral::lp_norm(fam[i], kInf) / rhs);
  }
  rep.finalize();
  rep.regression_constant = rep.max;
  return rep;
}

RatioReport rad_sob_probe(const ProbeContext& ctx) {
  RatioReport rep;
  rep.lhs_label = "||r f_lam||_inf / ||f_lam||_2";
  rep.rhs_label = "lam";
  const GridPtr grid = ctx.grid4_wide ? ctx.grid4_wide : ctx.grid4;
  auto ht = spectral::HankelTransform::get(grid);
  for (int e = -4; e <= 4; ++e) {
    const double lam = std::ldexp(1.0, e);
    RadialProfile fh(grid);
    for (std::size_t k = 0; k < grid->size(); ++k) {
      const double rho = grid->freqs[k];
      const double lg = std::log(rho / lam);
      fh.samples[k] = spectral::chi_cut(rho / lam) * std::exp(-lg * lg);
    }
    const RadialProfile f = ht->inverse(fh);
    RadialProfile rf = f;
    for (std::size_t i = 0; i < rf.size(); ++i)
      rf.samples[i] *= grid->nodes[i];
    const double l2 = spectral::lp_norm(f, 2.0);
    if (l2 == 0.0) {
      ++rep.skipped;
      continue;
    }
    rep.params.push_back(lam);
    rep.ratios.push_back(spectral::lp_norm(rf, kInf) / l2);
  }
  rep.finalize();
  rep.fit_slope();  // expected exponent: 1
  double worst = 0.0;
  for (std::size_t i = 0; i < rep.ratios.size(); ++i)
    worst = std::max(worst, rep.ratios[i] / rep.params[i]);
  rep.regression_constant = worst;
  return rep;
}

RatioReport nonlin_probe(const ProbeContext& ctx) {
  RatioReport rep;
  rep.lhs_label = "||h1 v^3 v_r + h2 v^3 + h3 v^5||_{L1(B1^B0)}";
  rep.rhs_label = "||v||_Xt^3";
  for (const auto& traj : ctx.trajectories) {
    const double xt = xtilde_norm(traj, ctx.grid4, ctx.part);
    if (xt == 0.0) {
      ++rep.skipped;
      continue;
    }
    const double lhs = nonlin_l1_besov(traj, ctx.grid4, ctx.part);
    rep.params.push_back(xt);
    rep.ratios.push_back(lhs / (xt * xt * xt));
  }
  rep.finalize();
  rep.regression_constant = rep.max;
  return rep;
}

}  // namespace

RatioReport inequality_probe(Inequality which, const ProbeContext& ctx) {
  switch (which) {
    case Inequality::prod: return prod_probe(ctx);
    case Inequality::algebra_y: return algebra_probe(ctx, false);
    case Inequality::r_weight: return algebra_probe(ctx, true);
    case Inequality::sin_power: return sin_power_probe(ctx);
    case Inequality::sob: return sob_probe(ctx);
    case Inequality::rad_sob: return rad_sob_probe(ctx);
    case Inequality::nonlin: return nonlin_probe(ctx);
  }
  throw std::domain_error("inequality_probe: unknown probe");
}

namespace {

// Besov norms of a trajectory snapshot's v_t and v_r, resampled to grid4
struct SnapshotNorms {
  double b1_b0 = 0.0;    // ||dv||_{B1 ^ B0}
  double b16_b56 = 0.0;  // ||dv||_{B^{1/6}_{6,1} ^ B^{-5/6}_{6,1}}
};

SnapshotNorms snapshot_deriv_norms(const evol::FieldState& s,
                                   const GridPtr& grid4,
                                   const DyadicPartition& part) {
  static thread_local std::vector<double> vr, vrr;
  evol::radial_derivs(s.f.samples, s.f.grid->spacing(), s.form, 4, vr, vrr);
  RadialProfile vr_prof;
  vr_prof.grid = s.f.grid;
  vr_prof.samples.assign(vr.begin(), vr.end());

  auto ht = spectral::HankelTransform::get(grid4);
  const RadialProfile ht_vt = ht->forward(spectral::resample(s.f_t, grid4));
  const RadialProfile ht_vr = ht->forward(spectral::resample(vr_prof, grid4));

  SnapshotNorms out;
  for (const auto* h : {&ht_vt, &ht_vr}) {
    out.b1_b0 += spectral::besov_norm_hat(*h, {1.0, 2.0, 1.0, 4}, part).value +
                 spectral::besov_norm_hat(*h, {0.0, 2.0, 1.0, 4}, part).value;
    out.b16_b56 +=
        spectral::besov_norm_hat(*h, {1.0 / 6.0, 6.0, 1.0, 4}, part).value +
        spectral::besov_norm_hat(*h, {-5.0 / 6.0, 6.0, 1.0, 4}, part).value;
  }
  return out;
}

}  // namespace

double xtilde_norm(const evol::Trajectory& traj, const GridPtr& grid4,
                   const DyadicPartition& part) {
  if (traj.snapshots.empty()) return 0.0;
  double linf = 0.0, l2sq = 0.0;
  double tprev = traj.snapshots.front().t;
  double prev_sq = -1.0;
  for (const auto& s : traj.snapshots) {
    const SnapshotNorms n = snapshot_deriv_norms(s, grid4, part);
    linf = std::max(linf, n.b1_b0);
    const double sq = n.b16_b56 * n.b16_b56;
    if (prev_sq >= 0.0) l2sq += 0.5 * (sq + prev_sq) * (s.t - tprev);
    prev_sq = sq;
    tprev = s.t;
  }
  return linf + std::sqrt(l2sq);
}

double nonlin_l1_besov(const evol::Trajectory& traj, const GridPtr& grid4,
                       const DyadicPartition& part) {
  if (traj.snapshots.size() < 2) return 0.0;
  auto ht = spectral::HankelTransform::get(grid4);
  double acc = 0.0, prev = -1.0, tprev = 0.0;
  static thread_local std::vector<double> vr, vrr;
  for (const auto& s : traj.snapshots) {
    evol::radial_derivs(s.f.samples, s.f.grid->spacing(), s.form, 4, vr, vrr);
    RadialProfile nl;
    nl.grid = s.f.grid;
    nl.samples.resize(s.f.size());
    for (std::size_t i = 0; i < nl.samples.size(); ++i) {
      const double r = s.f.grid->nodes[i];
      const double v = s.f.samples[i];
      const double u = r * v;
      const double phi = coef::phi_stable(v, u);
      const double v3 = v * v * v;
      nl.samples[i] =
          (coef::h_tilde(coef::CoefficientId::h1, u) * v3 * vr[i] +
           coef::h_tilde(coef::CoefficientId::h2, u) * v3 +
           coef::h_tilde(coef::CoefficientId::h3, u) * v3 * v * v) /
          phi;
    }
    const RadialProfile nh = ht->forward(spectral::resample(nl, grid4));
    const double b =
        spectral::besov_norm_hat(nh, {1.0, 2.0, 1.0, 4}, part).value +
        spectral::besov_norm_hat(nh, {0.0, 2.0, 1.0, 4}, part).value;
    if (prev >= 0.0) acc += 0.5 * (b + prev) * (s.t - tprev);
    prev = b;
    tprev = s.t;
  }
  return acc;
}

RatioReport strichartz_probe(double q, double r_exp, bool rv,
                             const st::TimeWindow& win, const GridPtr& grid,
                             std::span<const double> lambdas,
                             const DyadicPartition& part) {
  // admissibility: classical 2/q + 3/r <= 3/2 or radial-improved
  // 1/q + 3/r < 3/2 (n = 4); q, r >= 2
  if (q < 2.0 || r_exp < 2.0)
    throw std::domain_error("strichartz_probe: q, r must be >= 2");
  const double classical = 2.0 / q + 3.0 / r_exp;
  const double improved = 1.0 / q + 3.0 / r_exp;
  if (!rv && classical > 1.5 + 1e-12 && !(improved < 1.5))
    throw std::domain_error(
        "strichartz_probe: inadmissible pair, needs 2/q + 3/r <= 3/2 "
        "(classical) or 1/q + 3/r < 3/2 (radial)");

  RatioReport rep;
  rep.lhs_label = rv ? "||r v||_{L^q L^inf}"
                     : "lam^{4/r + 1/q - 2} ||v||_{L^q L^r}";
  rep.rhs_label = rv ? "lam^{1 - 1/q} ||v||_{F_lam}" : "||v||_{F_lam}";

  auto ht = spectral::HankelTransform::get(grid);
  for (double lam : lambdas) {
    if (!part.contains(lam)) throw spectral::BandError("lambda outside range");
    // band-limited free wave from data fhat = chi(rho/lam) exp(-log^2(rho/lam))
    RadialProfile fh(grid);
    for (std::size_t k = 0; k < grid->size(); ++k) {
      const double rho = grid->freqs[k];
      const double lg = std::log(rho / lam);
      fh.samples[k] = spectral::chi_cut(rho / lam) * std::exp(-lg * lg);
    }
    st::SpacetimeField w(win, grid);
    std::vector<double> slice(grid->size());
    for (int j = 0; j < win.nt; ++j) {
      const double t = win.time(j);
      RadialProfile vh(grid);
      for (std::size_t k = 0; k < grid->size(); ++k)
        vh.samples[k] = std::cos(t * grid->freqs[k]) * fh.samples[k];
      ht->inverse(vh.samples.data(), slice.data());
      for (std::size_t i = 0; i < grid->size(); ++i) w.at(j, i) = slice[i];
    }
    const st::SpacetimeSpectrum spec = st::st_transform(w);
    const st::SpacetimeSpectrum band = st::a_band(spec, lam);
    const double f_lam = st::f_norm_surrogate(band, lam).value;
    if (f_lam == 0.0) {
      ++rep.skipped;
      continue;
    }
    double ratio;
    if (rv) {
      const double lhs = st::lqlr_norm(w, q, kInf, true);
      ratio = lhs / f_lam;  // slope target 1 - 1/q
    } else {
      const double lhs = std::pow(lam, 4.0 / r_exp + 1.0 / q - 2.0) *
                         st::lqlr_norm(w, q, r_exp, false);
      ratio = lhs / f_lam;  // slope target 0
    }
    rep.params.push_back(lam);
    rep.ratios.push_back(ratio);
  }
  rep.finalize();
  rep.fit_slope();
  rep.regression_constant = rep.max;
  return rep;
}

namespace {

std::function<double(double, double)> packet_env(double lambda, double mu,
                                                 double amp) {
  return [=](double tau, double rho) {
    const double mag = std::hypot(tau, rho);
    if (mag == 0.0) return 0.0;
    const double m = std::fabs(tau * tau - rho * rho) / mag;
    return amp * spectral::chi_cut(mag / lambda) *
           spectral::theta_cut(m / mu);
  };
}

st::SpacetimeField make_packet(const st::TimeWindow& win, const GridPtr& grid,
                               double lambda, double mu, double amp) {
  return st::synthesize_packet(win, grid, packet_env(lambda, mu, amp));
}

}  // namespace

RatioReport trilinear_probe(const st::TimeWindow& win, const GridPtr& grid,
                            const DyadicPartition& part,
                            const TrilinearOptions& opt) {
  RatioReport rep;
  rep.lhs_label = "||r^2 u v w||_X";
  rep.rhs_label = "||u||_X ||v||_X ||w||_X";
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> esep(0, opt.max_sep_log2);
  std::uniform_real_distribution<double> uamp(0.5, 1.5);
  std::uniform_real_distribution<double> umu(-3.0, 0.0);

  for (int trial = 0; trial < opt.trials; ++trial) {
    // nu <= mu_f <= lam dyadic with lam/nu = 2^sep; top frequency capped so
    // the triple product stays resolved
    const int sep = esep(rng);
    const int e_top = opt.max_lambda_log2;
    const int e_lam = std::min(e_top, sep + (trial % 2 == 0 ? 0 : -1));
    const int e_nu = e_lam - sep;
    const int e_mid = e_nu + (sep > 0 ? (trial % (sep + 1)) : 0);
    const double lam = std::ldexp(1.0, e_lam);
    const double nu = std::ldexp(1.0, e_nu);
    const double mid = std::ldexp(1.0, e_mid);

    // factor norms run on the synthesized spectra directly; only the
    // product needs a forward transform
    const auto su = st::synthesize_spectrum(
        win, grid, packet_env(nu, nu * std::exp2(umu(rng)), uamp(rng)));
    const auto sv = st::synthesize_spectrum(
        win, grid, packet_env(mid, mid * std::exp2(umu(rng)), uamp(rng)));
    const auto sw = st::synthesize_spectrum(
        win, grid, packet_env(lam, lam * std::exp2(umu(rng)), uamp(rng)));
    const double xu = st::composite_x_norm(su, part).x;
    const double xv = st::composite_x_norm(sv, part).x;
    const double xw = st::composite_x_norm(sw, part).x;
    if (xu == 0.0 || xv == 0.0 || xw == 0.0) {
      ++rep.skipped;
      continue;
    }
    st::SpacetimeField p = st::product(
        st::product(st::st_inverse(su), st::st_inverse(sv)),
        st::st_inverse(sw));
    st::scale_by_r_power(p, 2);
    const double lhs = st::composite_x_norm(p, part).x;
    rep.params.push_back(lam / nu);
    rep.ratios.push_back(lhs / (xu * xv * xw));
  }
  rep.finalize();
  rep.fit_slope();
  rep.regression_constant = rep.max;
  return rep;
}

RatioReport sin_composition_probe(double alpha, const st::TimeWindow& win,
                                  const GridPtr& grid,
                                  const DyadicPartition& part, int trials,
                                  std::uint64_t seed) {
  RatioReport rep;
  rep.lhs_label = "||sin(alpha r v)/r||_X";
  rep.rhs_label = "||v||_X";
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ulam(-1.0, 1.0);
  std::uniform_real_distribution<double> uamp(0.01, 0.05);
  for (int trial = 0; trial < trials; ++trial) {
    const double lam = std::exp2(std::round(ulam(rng)));
    st::SpacetimeField v = make_packet(win, grid, lam, lam / 4.0, 1.0);
    const double xv0 = st::composite_x_norm(v, part).x;
    if (xv0 == 0.0) {
      ++rep.skipped;
      continue;
    }
    const double target = uamp(rng);
    for (double& s : v.samples) s *= target / xv0;
    const double xv = st::composite_x_norm(v, part).x;
    if (xv > 0.5)
      throw std::domain_error(
          "sin_composition_probe: amplitude too large for the series bound");
    st::SpacetimeField g(win, grid);
    for (int j = 0; j < win.nt; ++j)
      for (std::size_t i = 0; i < grid->size(); ++i) {
        const double r = grid->nodes[i];
        const double u = r * v.at(j, i);
        // sin(alpha u)/r = alpha v sinc(alpha u)
        g.at(j, i) = alpha * v.at(j, i) * special::sinc(alpha * u);
      }
    const double lhs = st::composite_x_norm(g, part).x;
    rep.params.push_back(xv);
    rep.ratios.push_back(lhs / xv);
  }
  rep.finalize();
  rep.regression_constant = rep.max;
  return rep;
}

RatioReport bilinear_probe(const st::TimeWindow& win, const GridPtr& grid,
                           const DyadicPartition& part, int trials,
                           std::uint64_t seed) {
  RatioReport rep;
  rep.lhs_label = "||r u v||_X";
  rep.rhs_label = "||u||_X ||v||_X";
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> esep(0, 4);
  std::uniform_real_distribution<double> umu(-3.0, 0.0);
  for (int trial = 0; trial < trials; ++trial) {
    const int sep = esep(rng);
    const double lam = std::ldexp(1.0, std::min(2, sep));
    const double nu = lam / std::ldexp(1.0, sep);
    const auto u = make_packet(win, grid, nu, nu * std::exp2(umu(rng)), 1.0);
    const auto v = make_packet(win, grid, lam, lam * std::exp2(umu(rng)), 1.0);
    const double xu = st::composite_x_norm(u, part).x;
    const double xv = st::composite_x_norm(v, part).x;
    if (xu == 0.0 || xv == 0.0) {
      ++rep.skipped;
      continue;
    }
    st::SpacetimeField p = st::product(u, v);
    st::scale_by_r_power(p, 1);
    rep.params.push_back(lam / nu);
    rep.ratios.push_back(st::composite_x_norm(p, part).x / (xu * xv));
  }
  rep.finalize();
  rep.fit_slope();
  rep.regression_constant = rep.max;
  return rep;
}

RatioReport norm_transition_probe(const GridPtr& grid2, const GridPtr& grid4,
                                  const BesovSpec& spec,
                                  const DyadicPartition& part, int count,
                                  std::uint64_t seed) {
  RatioReport rep;
  rep.lhs_label = "||u2/r||_{B(R4)}";
  rep.rhs_label = "||r^{2/p-1} u2||_{B(R2)}";
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uw(0.6, 2.5);
  for (int m = 0; m < count; ++m) {
    const double w = uw(rng);
    // odd, degree-0 style profile on R^2: u2 = r exp(-(r/w)^2)
    RadialProfile u2(grid2, [=](double r) {
      const double x = r / w;
      return r * std::exp(-x * x);
    });
    const double ratio =
        spectral::norm_transition_ratio(u2, spec, grid4, part);
    if (ratio == 0.0) {
      ++rep.skipped;
      continue;
    }
    rep.params.push_back(w);
    rep.ratios.push_back(ratio);
  }
  rep.finalize();
  rep.regression_constant = rep.max;
  return rep;
}

}  // namespace fadlab::probes

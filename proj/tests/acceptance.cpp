// Acceptance suite: one quantitative gate per criterion, each printing a
// single PASS/FAIL line with the measured value against its pinned
// tolerance. Run everything (`acceptance`), one criterion
// (`acceptance --criterion N`), or print fresh regression constants for
// acceptance_constants.hpp (`acceptance --record`).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include "acceptance_constants.hpp"
#include "fadlab/besov.hpp"
#include "fadlab/coefficients.hpp"
#include "fadlab/diagnostics.hpp"
#include "fadlab/evolution.hpp"
#include "fadlab/io.hpp"
#include "fadlab/kernels.hpp"
#include "fadlab/probes.hpp"
#include "fadlab/spacetime.hpp"

using namespace fadlab;
using coef::CoefficientId;
using evol::FieldForm;
using evol::FieldState;
using spectral::DyadicPartition;
using spectral::RadialGrid;
using spectral::RadialProfile;

namespace {

bool g_record = false;
int g_failures = 0;

void line(int criterion, bool pass, const std::string& what) {
  std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion,
              what.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------- 1
void criterion_1() {
  const double e1 = std::fabs(coef::h_tilde(CoefficientId::h2, 0.0) + 2.0 / 3.0);
  const double e2 = std::fabs(coef::h_tilde(CoefficientId::h3, 0.0) - 1.0 / 3.0);
  const double e3 = std::fabs(coef::h_tilde(CoefficientId::h4, 0.0) - 1.0);
  const double e4 = std::fabs(coef::h_tilde(CoefficientId::h1, 0.0));
  const double e5 =
      std::fabs(coef::h_tilde_deriv(CoefficientId::h1, 1, 0.0) - 2.0 / 3.0);
  const double worst = std::max({e1, e2, e3, e4, e5});
  line(1, worst <= 1e-10,
       "coefficient limits h~_i(0), h~_1 slope; worst dev " + fmt(worst) +
           " (tol 1e-10)");
}

// ---------------------------------------------------------------- 2
std::vector<double> decay_grid() {
  std::vector<double> g;
  for (double u = 0.0; u <= 3.0; u += 0.002) g.push_back(u);
  for (double x = std::log(3.0); x < std::log(1e4); x += 0.001)
    g.push_back(std::exp(x));
  return g;
}

void criterion_2() {
  const auto grid = decay_grid();
  const CoefficientId ids[4] = {CoefficientId::h1, CoefficientId::h2,
                                CoefficientId::h3, CoefficientId::h4};
  bool pass = true;
  double worst_dev = 0.0;
  std::ostringstream rec;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j <= 3; ++j) {
      const auto rep = coef::decay_margin(ids[i], j, grid);
      if (!std::isfinite(rep.max) || rep.max <= 0.0) pass = false;
      if (g_record) {
        rec << (j == 0 && i > 0 ? ",\n    {" : (j == 0 ? "    {" : ""))
            << io::format_double(rep.max) << (j < 3 ? ", " : "}");
        continue;
      }
      const double want = accept::kDecayEnvelope[i][j];
      if (want == 0.0) {
        pass = false;
        continue;
      }
      const double dev = std::fabs(rep.max - want) / want;
      worst_dev = std::max(worst_dev, dev);
      if (dev > 0.01) pass = false;
    }
  }
  if (g_record) {
    std::printf("kDecayEnvelope = {\n%s,\n};\n", rec.str().c_str());
    return;
  }
  line(2, pass,
       "decay envelopes sup |d^j h~| <u>^k finite, within 1% of recorded; "
       "worst dev " + fmt(worst_dev));
}

// ---------------------------------------------------------------- 3
void criterion_3() {
  auto g = RadialGrid::bessel(4, 40.0, 2048);
  auto ht = spectral::HankelTransform::get(g);
  RadialProfile f(g, [](double r) { return std::exp(-0.5 * r * r); });
  const auto fh = ht->forward(f);
  const double peak = std::pow(2.0 * M_PI, 2);
  double gauss_err = 0.0;
  for (std::size_t k = 0; k < fh.size(); ++k)
    gauss_err = std::max(
        gauss_err,
        std::fabs(fh.samples[k] -
                  peak * std::exp(-0.5 * g->freqs[k] * g->freqs[k])));
  gauss_err /= peak;
  const auto back = ht->inverse(fh);
  double rt = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    rt = std::max(rt, std::fabs(back.samples[i] - f.samples[i]));
  const double l2 = spectral::lp_norm(f, 2.0);
  double acc = 0.0;
  for (std::size_t k = 0; k < fh.size(); ++k) {
    const double x = g->freqs[k] * fh.samples[k];
    acc += g->wf_rdr[k] * x * x;
  }
  const double l2f =
      std::sqrt(2.0 * M_PI * M_PI * acc) / std::pow(2.0 * M_PI, 2);
  const double planch = std::fabs(l2f - l2) / l2;
  const bool pass = rt < 1e-8 && gauss_err < 1e-6 && planch < 1e-8;
  line(3, pass,
       "hankel N=2048 R=40: round trip " + fmt(rt) + " (1e-8), gaussian " +
           fmt(gauss_err) + " (1e-6), plancherel " + fmt(planch) + " (1e-8)");
}

// ---------------------------------------------------------------- 4
void criterion_4() {
  auto g = RadialGrid::bessel(4, 40.0, 2048);
  auto g2 = RadialGrid::bessel(2, 40.0, 2048);
  auto ht = spectral::HankelTransform::get(g);
  const auto part = DyadicPartition::standard();

  // reconstruction on a resolved profile
  RadialProfile fh(g);
  for (std::size_t k = 0; k < g->size(); ++k) {
    const double rho = g->freqs[k];
    fh.samples[k] = spectral::theta_cut(rho / 8.0) *
                    (1.0 - spectral::theta_cut(rho / 1.0));
  }
  const RadialProfile f = ht->inverse(fh);
  RadialProfile sum(g);
  for (double lam : part.lambdas) {
    if (2.0 * lam < g->freqs.front() || 0.5 * lam > g->freqs.back()) continue;
    const auto piece = spectral::band_project(f, lam, part);
    for (std::size_t i = 0; i < sum.size(); ++i)
      sum.samples[i] += piece.samples[i];
  }
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double d = sum.samples[i] - f.samples[i];
    num += g->w_rdr[i] * std::pow(g->nodes[i] * d, 2);
    den += g->w_rdr[i] * std::pow(g->nodes[i] * f.samples[i], 2);
  }
  const double recon = std::sqrt(num / den);

  // dilation covariance on the data-space instances (p = 2, n = 4 and a
  // p = 2, n = 2 instance); p = 6 deviations are reported alongside
  auto mk4 = [&](double dil) {
    RadialProfile h(g);
    for (std::size_t k = 0; k < g->size(); ++k) {
      const double rho = dil * g->freqs[k];
      h.samples[k] = std::pow(dil, 4) * spectral::theta_cut(rho / 16.0) *
                     (1.0 - spectral::theta_cut(rho / 2.0));
    }
    return h;
  };
  const auto f1 = mk4(1.0);
  const auto f2 = mk4(2.0);  // hat of f(r/2)
  double worst = 0.0;
  for (auto [s, p] : {std::pair{2.0, 2.0}, {1.0, 2.0}, {0.0, 2.0}}) {
    const double b1 = spectral::besov_norm_hat(f1, {s, p, 1.0, 4}, part).value;
    const double b2 = spectral::besov_norm_hat(f2, {s, p, 1.0, 4}, part).value;
    worst = std::max(worst,
                     std::fabs(b2 / b1 / std::pow(2.0, 4.0 / p - s) - 1.0));
  }
  auto mk2 = [&](double dil) {
    RadialProfile h(g2);
    for (std::size_t k = 0; k < g2->size(); ++k) {
      const double rho = dil * g2->freqs[k];
      h.samples[k] = std::pow(dil, 2) * spectral::theta_cut(rho / 16.0) *
                     (1.0 - spectral::theta_cut(rho / 2.0));
    }
    return h;
  };
  const double c1 =
      spectral::besov_norm_hat(mk2(1.0), {1.0, 2.0, 1.0, 2}, part).value;
  const double c2 =
      spectral::besov_norm_hat(mk2(2.0), {1.0, 2.0, 1.0, 2}, part).value;
  worst = std::max(worst, std::fabs(c2 / c1 / std::pow(2.0, 0.0) - 1.0));

  // p = 6 (informational): limited by the oscillatory-band quadrature
  auto mk6 = [&](double dil) {
    RadialProfile h(g);
    for (std::size_t k = 0; k < g->size(); ++k) {
      const double rho = dil * g->freqs[k];
      h.samples[k] = std::pow(dil, 4) * spectral::theta_cut(rho / 4.0) *
                     (1.0 - spectral::theta_cut(rho / 1.0));
    }
    return h;
  };
  const double s1 =
      spectral::besov_norm_hat(mk6(1.0), {1.0 / 6.0, 6.0, 1.0, 4}, part).value;
  const double s2 =
      spectral::besov_norm_hat(mk6(0.5), {1.0 / 6.0, 6.0, 1.0, 4}, part).value;
  const double dev6 =
      std::fabs(s2 / s1 / std::pow(2.0, -(4.0 / 6.0 - 1.0 / 6.0)) - 1.0);

  const bool pass = recon < 1e-6 && worst < 1e-6;
  line(4, pass,
       "LP reconstruction " + fmt(recon) +
           " (1e-6); dilation covariance p=2 instances dev " + fmt(worst) +
           " (1e-6); p=6 reported " + fmt(dev6));
}

// ---------------------------------------------------------------- 5
double drift_of(int n, double T) {
  auto g = RadialGrid::uniform(2, 40.0, n);
  auto init = evol::initial_data(evol::DataFamily::gauss_bump, 0.05, g,
                                 FieldForm::u_form);
  evol::SolverConfig cfg;
  cfg.n_nodes = n;
  cfg.cutoff = 40.0;
  cfg.horizon = T;
  cfg.cfl = 0.5;
  cfg.snapshot_stride = 64;
  const auto traj = evol::evolve(init, cfg);
  if (traj.status != evol::TrajectoryStatus::completed) return 1e9;
  const double e0 = diag::energy(traj.snapshots.front()).total;
  double drift = 0.0;
  for (const auto& s : traj.snapshots)
    drift = std::max(drift, std::fabs(diag::energy(s).total - e0) / e0);
  return drift;
}

void criterion_5() {
  const double drift = drift_of(4096, 20.0);
  const double d1 = drift_of(512, 5.0);
  const double d2 = drift_of(1024, 5.0);
  const double order = std::log2(d1 / d2);
  const bool pass = drift < 1e-5 && order >= 2.0;
  line(5, pass,
       "energy drift delta=0.05 N=4096 T=20: " + fmt(drift) +
           " (1e-5); refinement order " + fmt(order) + " (>= 2)");
}

// ---------------------------------------------------------------- 6
void criterion_6() {
  bool pass = true;
  std::string txt = "nullform residual orders:";
  const diag::AnalyticField fields[3] = {
      diag::gaussian_field(1.0, 1.0, 1.0),
      diag::r_gauss_cos_field(1.0, 1.0, 1.0),
      diag::r_gauss_cos_field(0.7, 0.5, 2.0)};
  for (const auto& f : fields) {
    const auto rep = diag::nullform_residual(f, 2.0, 8.0, {64, 128, 256});
    txt += " " + fmt(rep.order);
    if (std::fabs(rep.order - 2.0) > 0.2) pass = false;
  }
  line(6, pass, txt + " (2.0 +- 0.2)");
}

// ---------------------------------------------------------------- 7
void criterion_7() {
  const auto u = diag::r_gauss_cos_field(0.8, 1.0, 1.2);
  double worst = 0.0;
  for (double lam : {0.25, 1.0, 2.0, 8.0})
    worst = std::max(worst,
                     diag::scaling_covariance_residual(u, lam, 2.0, 6.0, 24));
  line(7, worst < 1e-10,
       "scaling covariance residual over lambda {1/4,1,2,8}: " + fmt(worst) +
           " (1e-10)");
}

// ---------------------------------------------------------------- 8
void criterion_8() {
  auto vfun = [](double t, double r) {
    return 0.3 * (1.0 + 0.2 * t) * std::exp(-r * r);
  };
  auto vt = [](double, double r) { return 0.06 * std::exp(-r * r); };
  std::vector<double> hs, errs;
  for (int n : {256, 512, 1024}) {
    const double t0 = 0.7;
    auto g4 = RadialGrid::uniform(4, 16.0, n);
    const double h = g4->spacing();
    std::vector<double> v(n), vts(n), u(n), uts(n);
    for (int i = 0; i < n; ++i) {
      const double r = g4->nodes[i];
      v[i] = vfun(t0, r);
      vts[i] = vt(t0, r);
      u[i] = r * v[i];
      uts[i] = r * vts[i];
    }
    std::vector<double> vr, vrr, ur, urr;
    evol::radial_derivs(v, h, FieldForm::v_form, 2, vr, vrr);
    evol::radial_derivs(u, h, FieldForm::u_form, 2, ur, urr);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const double r = g4->nodes[i];
      if (r <= 0.5) continue;
      const double uu = u[i];
      const double s = std::sin(uu);
      const double phi = 1.0 + s * s / (r * r);
      const double res_u = phi * (0.0 - urr[i]) -
                           (1.0 - s * s / (r * r)) * ur[i] / r +
                           std::sin(2.0 * uu) / (2.0 * r * r) *
                               (uts[i] * uts[i] - ur[i] * ur[i] + 1.0);
      const double pst = coef::phi_stable(v[i], uu);
      const double v3 = v[i] * v[i] * v[i];
      const double nl =
          (coef::h_tilde(CoefficientId::h1, uu) * v3 * vr[i] +
           coef::h_tilde(CoefficientId::h2, uu) * v3 +
           coef::h_tilde(CoefficientId::h3, uu) * v3 * v[i] * v[i] +
           coef::h_tilde(CoefficientId::h4, uu) * v[i] *
               (vts[i] * vts[i] - vr[i] * vr[i])) /
          pst;
      const double res_v = 0.0 + vrr[i] + 3.0 * vr[i] / r - nl;
      worst = std::max(worst, std::fabs(res_u + r * phi * res_v));
    }
    hs.push_back(h);
    errs.push_back(worst);
  }
  ConvergenceReport rep;
  rep.resolutions = hs;
  rep.errors = errs;
  rep.finalize();
  const bool pass = std::fabs(rep.order - 2.0) <= 0.2;
  line(8, pass,
       "u = r v residual mapping R_u = -r Phi R_v, convergence order " +
           fmt(rep.order) + " (2.0 +- 0.2)");
}

// ---------------------------------------------------------------- 9
void criterion_9() {
  bool pass = true;
  double prev_bound = -1.0;
  std::string txt = "pointwise chain: ";
  for (double delta : {0.2, 0.1, 0.05, 0.02}) {
    const int n = 2048;
    auto g = RadialGrid::uniform(2, 40.0, n);
    auto init = evol::initial_data(evol::DataFamily::gauss_bump, delta, g,
                                   FieldForm::u_form);
    evol::SolverConfig cfg;
    cfg.n_nodes = n;
    cfg.cutoff = 40.0;
    cfg.horizon = 10.0;
    cfg.snapshot_stride = 128;
    const auto traj = evol::evolve(init, cfg);
    if (traj.status != evol::TrajectoryStatus::completed) {
      pass = false;
      continue;
    }
    const double e0 = diag::energy_midpoint(traj.snapshots.front()).total;
    const double bound0 = coef::big_i_inv(2.0 * e0);
    double max_u = 0.0;
    for (const auto& s : traj.snapshots) {
      const auto pb = diag::pointwise_bound_check(s);
      if (pb.chain_violation > 1e-12 || pb.ab_violation > 1e-12) pass = false;
      max_u = std::max(max_u, pb.max_abs_u);
    }
    if (max_u > bound0 + 1e-3) pass = false;
    if (prev_bound >= 0.0 && bound0 >= prev_bound) pass = false;  // monotone
    prev_bound = bound0;
    txt += fmt(max_u) + "<=" + fmt(bound0) + " ";
  }
  line(9, pass, txt + "(exact CS chain, bound + 1e-3, monotone in delta)");
}

// ---------------------------------------------------------------- 10
void criterion_10() {
  const int n = 2048;
  auto g = RadialGrid::uniform(4, 40.0, n);
  auto init = evol::initial_data(evol::DataFamily::gauss_bump, 0.02, g,
                                 FieldForm::v_form);
  evol::SolverConfig cfg;
  cfg.n_nodes = n;
  cfg.cutoff = 40.0;
  cfg.horizon = 30.0;
  cfg.snapshot_stride = 64;
  const auto traj = evol::evolve(init, cfg);
  bool pass = traj.status == evol::TrajectoryStatus::completed;
  std::string txt = "small-data delta=0.02 T=30: status ";
  txt += pass ? "COMPLETED" : "NOT COMPLETED";
  if (pass) {
    auto g4 = RadialGrid::bessel(4, 40.0, 2048);
    const auto part = DyadicPartition::standard();
    const auto rep = diag::scattering_fit(traj, g4, part);
    const double fp = rep.peak_defect > 0.0
                          ? rep.final_defect / rep.peak_defect
                          : 1.0;
    pass = rep.verdict == ScatterVerdict::decaying && fp < 0.1;
    txt += std::string(", verdict ") +
           (rep.verdict == ScatterVerdict::decaying ? "DECAYING"
            : rep.verdict == ScatterVerdict::growing ? "GROWING" : "FLAT") +
           ", final/peak " + fmt(fp) + " (< 0.1)";
  }
  line(10, pass, txt);
}

// ---------------------------------------------------------------- 11
void criterion_11() {
  probes::ProbeContext ctx;
  ctx.grid4 = RadialGrid::bessel(4, 40.0, 1024);
  ctx.grid4_wide = RadialGrid::bessel(4, 256.0, 4096);
  const auto rep = probes::inequality_probe(probes::Inequality::rad_sob, ctx);
  const bool pass = std::fabs(rep.slope - 1.0) <= 0.05;
  line(11, pass,
       "radial Sobolev ||r f_lam||_inf / ||f_lam||_2 slope " +
           fmt(rep.slope) + " (1.00 +- 0.05), constant " +
           fmt(rep.regression_constant));
}

// ---------------------------------------------------------------- 12
void criterion_12() {
  // each dyadic scale runs on its own self-similar window/grid (span and
  // cutoff ~ 1/lambda), so the fitted slopes measure the estimates'
  // lambda-exponents rather than fixed-window truncation
  const auto part = DyadicPartition::standard();
  RatioReport inf2, q26, rv4;
  for (int e = -3; e <= 3; ++e) {
    const double lam = std::ldexp(1.0, e);
    st::TimeWindow win;
    win.t0 = -24.0 / lam;
    win.t1 = 24.0 / lam;
    win.nt = 256;
    win.taper_frac = 0.15;
    auto grid = RadialGrid::bessel(4, 96.0 / lam, 768);
    const double lams[] = {lam};
    auto merge = [](RatioReport& into, const RatioReport& one) {
      into.params.insert(into.params.end(), one.params.begin(),
                         one.params.end());
      into.ratios.insert(into.ratios.end(), one.ratios.begin(),
                         one.ratios.end());
    };
    merge(inf2, probes::strichartz_probe(
                    std::numeric_limits<double>::infinity(), 2.0, false, win,
                    grid, lams, part));
    merge(q26, probes::strichartz_probe(2.0, 6.0, false, win, grid, lams,
                                        part));
    merge(rv4, probes::strichartz_probe(4.0, 2.0, true, win, grid, lams,
                                        part));
  }
  inf2.finalize();
  q26.finalize();
  q26.fit_slope();
  rv4.finalize();
  rv4.fit_slope();
  bool pass = true;
  for (double r : inf2.ratios)
    if (r < 0.5 || r > 2.0) pass = false;
  if (std::fabs(q26.slope) > 0.1) pass = false;
  if (std::fabs(rv4.slope - 0.75) > 0.05) pass = false;
  line(12, pass,
       "strichartz: (inf,2) ratios in [" + fmt(inf2.min) + "," +
           fmt(inf2.max) + "] (0.5..2); (2,6) slope " + fmt(q26.slope) +
           " (0 +- 0.1); rv q=4 slope " + fmt(rv4.slope) + " (0.75 +- 0.05)");
}

// ---------------------------------------------------------------- 13
void criterion_13() {
  probes::ProbeContext ctx;
  ctx.grid4 = RadialGrid::bessel(4, 32.0, 1024);
  const auto part = DyadicPartition::standard();
  ctx.part = part;

  std::vector<evol::Trajectory> trajs;
  std::vector<double> deltas;
  for (int k = 0; k < 10; ++k)
    deltas.push_back(0.05 * std::pow(0.02 / 0.05, k / 9.0));
  auto ugrid = RadialGrid::uniform(4, 32.0, 1024);
  for (double d : deltas) {
    auto init = evol::initial_data(evol::DataFamily::gauss_bump, d, ugrid,
                                   FieldForm::v_form);
    evol::SolverConfig cfg;
    cfg.n_nodes = 1024;
    cfg.cutoff = 32.0;
    cfg.horizon = 16.0;
    cfg.snapshot_stride = 64;
    trajs.push_back(evol::evolve(init, cfg));
  }
  ctx.trajectories = trajs;
  const auto rep = probes::inequality_probe(probes::Inequality::nonlin, ctx);

  // cubic dominance: slope of log LHS vs log ||v||_Xt
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i = 0; i < rep.ratios.size(); ++i) {
    const double xt = rep.params[i];
    const double lhs = rep.ratios[i] * xt * xt * xt;
    if (xt <= 0 || lhs <= 0) continue;
    const double x = std::log(xt), y = std::log(lhs);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++m;
  }
  const double slope =
      (m >= 2) ? (m * sxy - sx * sy) / (m * sxx - sx * sx) : 0.0;

  if (g_record) {
    std::printf("kNonlinMaxRatio = %s;  // observed max %s\n",
                io::format_double(rep.max * 1.05).c_str(),
                io::format_double(rep.max).c_str());
    return;
  }
  bool pass = std::fabs(slope - 3.0) <= 0.3;
  if (accept::kNonlinMaxRatio == 0.0 || rep.max > accept::kNonlinMaxRatio)
    pass = false;
  // the ratio must not grow as delta decreases: compare smallest-delta
  // ratio against the recorded max
  line(13, pass,
       "NONLIN: max ratio " + fmt(rep.max) + " (<= " +
           fmt(accept::kNonlinMaxRatio) + "), cubic slope " + fmt(slope) +
           " (3.0 +- 0.3)");
}

// ---------------------------------------------------------------- 14
void criterion_14() {
  const auto part = DyadicPartition::standard();
  // near separations on a compact grid, far separations on a wide one
  st::TimeWindow win_near;
  win_near.t0 = -16.0;
  win_near.t1 = 16.0;
  win_near.nt = 256;
  auto grid_near = RadialGrid::bessel(4, 48.0, 512);
  probes::TrilinearOptions near_opt;
  near_opt.trials = 70;
  near_opt.max_sep_log2 = 3;
  near_opt.seed = 41;
  auto rep = probes::trilinear_probe(win_near, grid_near, part, near_opt);

  st::TimeWindow win_far;
  win_far.t0 = -16.0;
  win_far.t1 = 16.0;
  win_far.nt = 256;
  auto grid_far = RadialGrid::bessel(4, 192.0, 768);
  probes::TrilinearOptions far_opt;
  far_opt.trials = 35;
  far_opt.max_sep_log2 = 6;
  far_opt.max_lambda_log2 = 1;  // product content stays inside rho_max
  far_opt.seed = 42;
  const auto far = probes::trilinear_probe(win_far, grid_far, part, far_opt);

  rep.params.insert(rep.params.end(), far.params.begin(), far.params.end());
  rep.ratios.insert(rep.ratios.end(), far.ratios.begin(), far.ratios.end());
  rep.finalize();
  rep.fit_slope();

  if (g_record) {
    std::printf("kTrilinearMaxRatio = %s;  // observed max %s\n",
                io::format_double(rep.max * 1.2).c_str(),
                io::format_double(rep.max).c_str());
    return;
  }
  bool pass = rep.ratios.size() >= 100 && rep.slope <= 0.1;
  if (accept::kTrilinearMaxRatio == 0.0 ||
      rep.max > accept::kTrilinearMaxRatio)
    pass = false;
  line(14, pass,
       "trilinear: " + std::to_string(rep.ratios.size()) +
           " triples, max ratio " + fmt(rep.max) + " (<= " +
           fmt(accept::kTrilinearMaxRatio) + "), separation slope " +
           fmt(rep.slope) + " (<= 0.1)");
}

// ---------------------------------------------------------------- 15
#ifndef FADLAB_CLI_PATH
#define FADLAB_CLI_PATH "./tools/fadlab"
#endif

bool same_bytes(const std::string& a, const std::string& b) {
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  if (!fa || !fb) return false;
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  return sa.str() == sb.str();
}

void criterion_15() {
  const std::string sim_cfg = "/tmp/fadlab_det_sim.json";
  {
    std::ofstream out(sim_cfg);
    out << R"({
  "grid": {"dim": 2, "cutoff": 20.0, "nodes": 256},
  "solver": {"horizon": 4.0, "cfl": 0.5},
  "data": {"family": "gauss_bump", "delta": 0.05, "form": "u_form"}
})";
  }
  const std::string probe_cfg = "/tmp/fadlab_det_probe.json";
  {
    std::ofstream out(probe_cfg);
    out << R"({
  "grid": {"dim": 4, "cutoff": 20.0, "nodes": 256},
  "family_size": 8,
  "probes": ["prod", "sob"]
})";
  }
  const std::string cli = FADLAB_CLI_PATH;
  bool pass = true;
  auto run = [&](const std::string& cfg, const std::string& sub,
                 const std::string& out) {
    const int rc = std::system((cli + " --config " + cfg + " --out " + out +
                                " --seed 99 " + sub + " > /dev/null")
                                   .c_str());
    if (rc != 0) pass = false;
  };
  run(sim_cfg, "simulate", "/tmp/fadlab_det_a");
  run(sim_cfg, "simulate", "/tmp/fadlab_det_b");
  run(probe_cfg, "probe", "/tmp/fadlab_det_pa");
  run(probe_cfg, "probe", "/tmp/fadlab_det_pb");
  for (const char* f :
       {"simulate_report.json", "timeseries.csv", "manifest.json",
        "trajectory/trajectory.json", "trajectory/snapshot_00000.csv",
        "energy_vs_t.dat"}) {
    if (!same_bytes(std::string("/tmp/fadlab_det_a/") + f,
                    std::string("/tmp/fadlab_det_b/") + f))
      pass = false;
  }
  for (const char* f : {"probe_report.json", "manifest.json"}) {
    if (!same_bytes(std::string("/tmp/fadlab_det_pa/") + f,
                    std::string("/tmp/fadlab_det_pb/") + f))
      pass = false;
  }
  line(15, pass, "determinism: identical simulate + probe CLI runs give "
                 "byte-identical reports/CSVs/plot data");
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--record") == 0) g_record = true;
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
      only = std::atoi(argv[i + 1]);
  }
  const std::function<void()> criteria[15] = {
      criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
      criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
      criterion_11, criterion_12, criterion_13, criterion_14, criterion_15};
  const auto t0 = std::chrono::steady_clock::now();
  for (int c = 1; c <= 15; ++c) {
    if (only != 0 && c != only) continue;
    if (g_record && c != 2 && c != 13 && c != 14) continue;
    const auto tc = std::chrono::steady_clock::now();
    criteria[c - 1]();
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - tc)
            .count();
    std::printf("            criterion %2d took %.1f s\n", c, dt);
  }
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::printf("acceptance total: %.1f s, %d failure(s)\n", total, g_failures);
  return g_failures == 0 ? 0 : 1;
}

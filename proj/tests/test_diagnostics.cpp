#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fadlab/coefficients.hpp"
#include "fadlab/diagnostics.hpp"

using namespace fadlab;
using evol::FieldForm;
using evol::FieldState;
using spectral::RadialGrid;
using spectral::RadialProfile;

namespace {

// adaptive Simpson oracle for the energy of a static analytic profile;
// panelled first so a localized bump cannot fool the refinement test
double simpson_core(const std::function<double(double)>& f, double a,
                    double b, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double s = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double s2 = (b - a) / 12.0 *
                    (fa + 4.0 * f(lm) + 2.0 * fm + 4.0 * f(rm) + fb);
  if (depth > 40 || std::fabs(s2 - s) < 15.0 * tol) return s2 + (s2 - s) / 15.0;
  return simpson_core(f, a, m, 0.5 * tol, depth + 1) +
         simpson_core(f, m, b, 0.5 * tol, depth + 1);
}

double simpson(const std::function<double(double)>& f, double a, double b,
               double tol) {
  const int panels = 64;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double x0 = a + (b - a) * p / panels;
    const double x1 = a + (b - a) * (p + 1) / panels;
    acc += simpson_core(f, x0, x1, tol / panels, 0);
  }
  return acc;
}

}  // namespace

TEST_CASE("energy: zero state, parts nonnegative, quadrature oracle") {
  auto g = RadialGrid::uniform(2, 20.0, 8192);
  FieldState s;
  s.form = FieldForm::u_form;
  s.f = RadialProfile(g);
  s.f_t = RadialProfile(g);
  auto rep = diag::energy(s);
  CHECK(rep.total == 0.0);

  const double delta = 0.3;
  s.f = RadialProfile(g, [&](double r) { return delta * r * std::exp(-r * r); });
  s.f_t = RadialProfile(g, [&](double r) { return 0.2 * r * std::exp(-r * r); });
  rep = diag::energy(s);
  CHECK(rep.kinetic >= 0.0);
  CHECK(rep.gradient >= 0.0);
  CHECK(rep.potential >= 0.0);
  CHECK(rep.total ==
        doctest::Approx(rep.kinetic + rep.gradient + rep.potential));

  // independent adaptive quadrature of the analytic integrand
  auto integrand = [&](double r) {
    if (r <= 0.0) return 0.0;
    const double u = delta * r * std::exp(-r * r);
    const double ur = delta * (1.0 - 2.0 * r * r) * std::exp(-r * r);
    const double ut = 0.2 * r * std::exp(-r * r);
    const double p = std::pow(std::sin(u) / r, 2);
    return ((1.0 + p) * 0.5 * (ut * ut + ur * ur) + 0.5 * p) * r;
  };
  const double oracle = simpson(integrand, 0.0, 20.0, 1e-13);
  CHECK(rep.total == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("pointwise bound chain: zero state and exact discrete inequalities") {
  auto g = RadialGrid::uniform(2, 20.0, 1024);
  FieldState s;
  s.form = FieldForm::u_form;
  s.f = RadialProfile(g);
  s.f_t = RadialProfile(g);
  auto rep = diag::pointwise_bound_check(s);
  CHECK(rep.max_abs_u == 0.0);
  CHECK(rep.implied_bound == 0.0);

  s.f = RadialProfile(g, [](double r) { return 0.4 * r * std::exp(-r * r); });
  s.f_t = RadialProfile(g, [](double r) { return 0.1 * std::exp(-r * r) * r; });
  rep = diag::pointwise_bound_check(s);
  CHECK(rep.chain_violation <= 1e-14);        // exact Cauchy-Schwarz
  CHECK(rep.ab_violation <= 1e-14);           // A, B <= 2E exactly
  CHECK(rep.max_abs_u <= rep.implied_bound + 1e-3);
  CHECK(rep.i_gap < 1e-3);
}

TEST_CASE("implied bound shrinks monotonically with amplitude") {
  auto g = RadialGrid::uniform(2, 20.0, 1024);
  double prev = -1.0;
  for (double delta : {0.2, 0.1, 0.05, 0.02}) {
    FieldState s;
    s.form = FieldForm::u_form;
    s.f = RadialProfile(g, [&](double r) {
      return delta * r * r * std::exp(-r * r);
    });
    s.f_t = RadialProfile(g);
    const auto rep = diag::pointwise_bound_check(s);
    if (prev >= 0.0) CHECK(rep.implied_bound < prev);
    prev = rep.implied_bound;
    CHECK(rep.max_abs_u <= rep.implied_bound + 1e-3);
  }
}

TEST_CASE("nullform identity: constants exactly, smooth fields at order 2") {
  // constants: residual at machine zero
  diag::AnalyticField c;
  c.w = [](double, double) { return 0.7; };
  c.wt = c.wr = c.wtt = c.wrr = [](double, double) { return 0.0; };
  auto rep = diag::nullform_residual(c, 2.0, 8.0, {64, 128});
  CHECK(rep.errors[0] < 1e-14);
  CHECK(rep.errors[1] < 1e-14);

  // e^{-(r^2 + t^2)} and r e^{-r^2} cos t converge at order 2 +- 0.2
  for (const auto& f :
       {diag::gaussian_field(1.0, 1.0, 1.0),
        diag::r_gauss_cos_field(1.0, 1.0, 1.0)}) {
    const auto r = diag::nullform_residual(f, 2.0, 8.0, {64, 128, 256});
    CHECK(r.order == doctest::Approx(2.0).epsilon(0.1));
  }
}

TEST_CASE("scale-invariant model covariance at analytic precision") {
  const auto u = diag::r_gauss_cos_field(0.8, 1.0, 1.2);
  for (double lam : {1.0, 2.0, 0.25, 8.0}) {
    const double res = diag::scaling_covariance_residual(u, lam, 2.0, 6.0, 24);
    CHECK(res < 1e-10);
  }
}

TEST_CASE("scattering fit: free data give near-zero defect") {
  const int n = 1024;
  auto g = RadialGrid::uniform(4, 40.0, n);
  auto init = evol::initial_data(evol::DataFamily::gauss_bump, 0.05, g,
                                 FieldForm::v_form);
  evol::SolverConfig cfg;
  cfg.n_nodes = n;
  cfg.cutoff = 40.0;
  cfg.horizon = 16.0;
  cfg.snapshot_stride = 64;
  cfg.nonlinear = false;  // exactly free evolution
  auto traj = evol::evolve(init, cfg);
  REQUIRE(traj.status == evol::TrajectoryStatus::completed);

  auto g4 = RadialGrid::bessel(4, 40.0, 1024);
  const auto part = spectral::DyadicPartition::standard();
  const auto rep = diag::scattering_fit(traj, g4, part);
  const double scale =
      spectral::data_norm_D(spectral::resample(init.f, g4),
                            spectral::resample(init.f_t, g4), part);
  CHECK(rep.peak_defect < 2e-2 * scale);  // FD-vs-spectral truncation only
}

TEST_CASE("scattering fit warns on short trajectories") {
  auto g = RadialGrid::uniform(4, 20.0, 256);
  auto init = evol::initial_data(evol::DataFamily::gauss_bump, 0.02, g,
                                 FieldForm::v_form);
  evol::SolverConfig cfg;
  cfg.n_nodes = 256;
  cfg.cutoff = 20.0;
  cfg.horizon = 0.5;
  cfg.snapshot_stride = 1 << 20;
  auto traj = evol::evolve(init, cfg);
  auto g4 = RadialGrid::bessel(4, 20.0, 256);
  const auto rep =
      diag::scattering_fit(traj, g4, spectral::DyadicPartition::standard());
  CHECK(!rep.warning.empty());
  CHECK(rep.verdict == ScatterVerdict::flat);
}

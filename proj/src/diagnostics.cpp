#include "fadlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "fadlab/coefficients.hpp"
#include "fadlab/special.hpp"

namespace fadlab::diag {
namespace {

using evol::FieldForm;
using evol::FieldState;
using spectral::RadialProfile;

// d/dx and d^3/dx^3 at x = 0 of the cubic through ((i+1/2) h, f_i), i < 4,
// in units of h: p'(0) = c1 . f / h, p'''(0) = c3 . f / h^3
struct EndFit {
  double c1[4];
  double c3[4];
  EndFit() {
    // invert the 4x4 Vandermonde at nodes 0.5, 1.5, 2.5, 3.5
    double M[4][8] = {};
    for (int i = 0; i < 4; ++i) {
      const double x = i + 0.5;
      M[i][0] = 1.0; M[i][1] = x; M[i][2] = x * x; M[i][3] = x * x * x;
      M[i][4 + i] = 1.0;
    }
    for (int col = 0; col < 4; ++col) {
      int piv = col;
      for (int r = col + 1; r < 4; ++r)
        if (std::fabs(M[r][col]) > std::fabs(M[piv][col])) piv = r;
      for (int k = 0; k < 8; ++k) std::swap(M[piv][k], M[col][k]);
      for (int r = 0; r < 4; ++r) {
        if (r == col) continue;
        const double f = M[r][col] / M[col][col];
        for (int k = 0; k < 8; ++k) M[r][k] -= f * M[col][k];
      }
    }
    for (int i = 0; i < 4; ++i) {
      c1[i] = M[1][4 + i] / M[1][1];        // coefficient of x
      c3[i] = 6.0 * M[3][4 + i] / M[3][3];  // 6 * coefficient of x^3
    }
  }
};
const EndFit kEnd;

// midpoint sum with Euler-Maclaurin corrections at r = 0 (integrand assumed
// decayed at the outer end)
double corrected_quadrature(const std::vector<double>& f, double h) {
  double s = 0.0;
  for (double v : f) s += v;
  s *= h;
  if (f.size() >= 4) {
    double d1 = 0.0, d3 = 0.0;
    for (int i = 0; i < 4; ++i) {
      d1 += kEnd.c1[i] * f[i];
      d3 += kEnd.c3[i] * f[i];
    }
    d1 /= h;
    d3 /= (h * h * h);
    s += -h * h / 24.0 * d1 + 7.0 * h * h * h * h / 5760.0 * d3;
  }
  return s;
}

EnergyReport energy_impl(const FieldState& state, bool corrected) {
  if (state.form != FieldForm::u_form)
    throw std::domain_error("energy: u-form states only");
  const auto& g = *state.f.grid;
  const std::size_t n = g.size();
  const double h = g.spacing();
  static thread_local std::vector<double> ur, urr, fk, fg, fp;
  evol::radial_derivs(state.f.samples, h, FieldForm::u_form, 4, ur, urr);
  fk.resize(n);
  fg.resize(n);
  fp.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = g.nodes[i];
    const double u = state.f.samples[i];
    const double ut = state.f_t.samples[i];
    const double sv = (u / r) * special::sinc(u);  // sin u / r
    const double p = sv * sv;                      // sin^2 u / r^2
    fk[i] = (1.0 + p) * 0.5 * ut * ut * r;
    fg[i] = (1.0 + p) * 0.5 * ur[i] * ur[i] * r;
    fp[i] = 0.5 * p * r;
  }
  EnergyReport rep;
  rep.t = state.t;
  if (corrected) {
    rep.kinetic = corrected_quadrature(fk, h);
    rep.gradient = corrected_quadrature(fg, h);
    rep.potential = corrected_quadrature(fp, h);
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      rep.kinetic += h * fk[i];
      rep.gradient += h * fg[i];
      rep.potential += h * fp[i];
    }
  }
  rep.total = rep.kinetic + rep.gradient + rep.potential;
  return rep;
}

}  // namespace

AnalyticField gaussian_field(double amp, double a, double b) {
  AnalyticField f;
  f.w = [=](double t, double r) { return amp * std::exp(-a * r * r - b * t * t); };
  f.wt = [=](double t, double r) {
    return -2.0 * b * t * amp * std::exp(-a * r * r - b * t * t);
  };
  f.wr = [=](double t, double r) {
    return -2.0 * a * r * amp * std::exp(-a * r * r - b * t * t);
  };
  f.wtt = [=](double t, double r) {
    return (4.0 * b * b * t * t - 2.0 * b) * amp *
           std::exp(-a * r * r - b * t * t);
  };
  f.wrr = [=](double t, double r) {
    return (4.0 * a * a * r * r - 2.0 * a) * amp *
           std::exp(-a * r * r - b * t * t);
  };
  return f;
}

AnalyticField r_gauss_cos_field(double amp, double a, double omega) {
  AnalyticField f;
  auto e = [=](double r) { return amp * r * std::exp(-a * r * r); };
  auto er = [=](double r) {
    return amp * (1.0 - 2.0 * a * r * r) * std::exp(-a * r * r);
  };
  auto err = [=](double r) {
    return amp * (4.0 * a * a * r * r * r - 6.0 * a * r) * std::exp(-a * r * r);
  };
  f.w = [=](double t, double r) { return e(r) * std::cos(omega * t); };
  f.wt = [=](double t, double r) {
    return -omega * e(r) * std::sin(omega * t);
  };
  f.wr = [=](double t, double r) { return er(r) * std::cos(omega * t); };
  f.wtt = [=](double t, double r) {
    return -omega * omega * e(r) * std::cos(omega * t);
  };
  f.wrr = [=](double t, double r) { return err(r) * std::cos(omega * t); };
  return f;
}

AnalyticField r_gauss_field(double amp, double a) {
  return r_gauss_cos_field(amp, a, 0.0);
}

EnergyReport energy(const FieldState& state) { return energy_impl(state, true); }
EnergyReport energy_midpoint(const FieldState& state) {
  return energy_impl(state, false);
}

PointwiseBoundReport pointwise_bound_check(const FieldState& state) {
  if (state.form != FieldForm::u_form)
    throw std::domain_error("pointwise_bound_check: u-form states only");
  const auto& g = *state.f.grid;
  const std::size_t n = g.size();
  const double h = g.spacing();
  static thread_local std::vector<double> ur, urr;
  evol::radial_derivs(state.f.samples, h, FieldForm::u_form, 4, ur, urr);

  PointwiseBoundReport rep;
  const EnergyReport em = energy_midpoint(state);
  rep.energy = em.total;

  // shared-weight cumulative sums: A_i = sum sin^2 u / s * h,
  // B_i = sum u_r^2 s * h, Itilde_i = sum |sin u| |u_r| * h
  double A = 0.0, B = 0.0, It = 0.0;
  rep.chain_violation = -1.0;
  rep.ab_violation = -1.0;
  rep.i_gap = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = g.nodes[i];
    const double u = state.f.samples[i];
    const double su = std::sin(u);
    A += su * su / s * h;
    B += ur[i] * ur[i] * s * h;
    It += std::fabs(su) * std::fabs(ur[i]) * h;
    rep.chain_violation = std::max(rep.chain_violation, It - std::sqrt(A * B));
    rep.i_gap = std::max(rep.i_gap, std::fabs(coef::big_i(u)) - It);
    rep.max_abs_u = std::max(rep.max_abs_u, std::fabs(u));
  }
  rep.ab_violation = std::max(A - 2.0 * em.total, B - 2.0 * em.total);
  rep.implied_bound = coef::big_i_inv(2.0 * em.total);
  return rep;
}

ConvergenceReport nullform_residual(const AnalyticField& v, double tmax,
                                    double rmax,
                                    const std::vector<int>& resolutions) {
  ConvergenceReport rep;
  rep.label = "nullform residual";
  for (int n : resolutions) {
    const double h = rmax / n;
    const int mt = std::max(4, static_cast<int>(std::round(tmax / h)));
    const double ht = tmax / mt;
    // sample lattice including one ghost ring
    const int nr = n;
    std::vector<double> w((mt + 3) * (nr + 2));
    auto at = [&](int j, int i) -> double& { return w[j * (nr + 2) + i]; };
    for (int j = -1; j <= mt + 1; ++j)
      for (int i = -1; i <= nr; ++i)
        at(j + 1, i + 1) = v.w(j * ht, (i + 0.5) * h);
    double worst = 0.0;
    for (int j = 1; j <= mt - 1; ++j) {
      for (int i = 1; i <= nr - 2; ++i) {
        const int jj = j + 1, ii = i + 1;
        const double c = at(jj, ii);
        const double vt = (at(jj + 1, ii) - at(jj - 1, ii)) / (2 * ht);
        const double vr = (at(jj, ii + 1) - at(jj, ii - 1)) / (2 * h);
        const double vtt =
            (at(jj + 1, ii) - 2 * c + at(jj - 1, ii)) / (ht * ht);
        const double vrr = (at(jj, ii + 1) - 2 * c + at(jj, ii - 1)) / (h * h);
        auto sq = [&](int dj, int di) {
          const double x = at(jj + dj, ii + di);
          return 0.5 * x * x;
        };
        const double qtt = (sq(1, 0) - c * c + sq(-1, 0)) / (ht * ht);
        const double qrr = (sq(0, 1) - c * c + sq(0, -1)) / (h * h);
        // v_t^2 - v_r^2 + Box(v^2/2) - v Box v, radial first-order parts
        // cancelled identically
        const double res =
            vt * vt - vr * vr + (-qtt + qrr) - c * (-vtt + vrr);
        worst = std::max(worst, std::fabs(res));
      }
    }
    rep.resolutions.push_back(h);
    rep.errors.push_back(worst);
  }
  rep.finalize();
  return rep;
}

namespace {

// scale-invariant-model operator from analytic derivatives
double smeq_op(const AnalyticField& u, double t, double r) {
  const double w = u.w(t, r);
  const double wt = u.wt(t, r);
  const double wr = u.wr(t, r);
  const double wtt = u.wtt(t, r);
  const double wrr = u.wrr(t, r);
  const double q = w / r;
  return (1.0 + q * q) * (wtt - wrr) - (1.0 - q * q) * wr / r +
         q / r * (wt * wt - wr * wr + 1.0);
}

}  // namespace

double scaling_covariance_residual(const AnalyticField& u, double lambda,
                                   double tmax, double rmax, int samples) {
  double worst = 0.0, scale = 0.0;
  for (int a = 0; a < samples; ++a) {
    const double t = tmax * (a + 0.5) / samples;
    for (int b = 0; b < samples; ++b) {
      const double r = rmax * (b + 0.5) / samples;
      // N[u_lam](t, r) with u_lam = lam u(t/lam, r/lam), evaluated from the
      // derivatives of u at the pulled-back point
      const double ts = t / lambda, rs = r / lambda;
      const double w = lambda * u.w(ts, rs);
      const double wt = u.wt(ts, rs);
      const double wr = u.wr(ts, rs);
      const double wtt = u.wtt(ts, rs) / lambda;
      const double wrr = u.wrr(ts, rs) / lambda;
      const double q = w / r;
      const double lhs = (1.0 + q * q) * (wtt - wrr) -
                         (1.0 - q * q) * wr / r +
                         q / r * (wt * wt - wr * wr + 1.0);
      const double rhs = smeq_op(u, ts, rs) / lambda;
      worst = std::max(worst, std::fabs(lhs - rhs));
      scale = std::max(scale, std::fabs(rhs));
    }
  }
  return scale > 0.0 ? worst / scale : worst;
}

ScatteringReport scattering_fit(const evol::Trajectory& traj,
                                const spectral::GridPtr& grid4,
                                const spectral::DyadicPartition& part) {
  ScatteringReport rep;
  if (traj.snapshots.empty())
    throw std::domain_error("scattering_fit: empty trajectory");
  if (traj.snapshots.front().form != FieldForm::v_form)
    throw std::domain_error("scattering_fit: v-form trajectories only");
  const auto& last = traj.snapshots.back();
  rep.fit_time = last.t;

  // pull the final snapshot back through the free flow
  const RadialProfile vT = spectral::resample(last.f, grid4);
  const RadialProfile vtT = spectral::resample(last.f_t, grid4);

  const double t_report = 0.9 * last.t;
  for (const auto& snap : traj.snapshots) {
    if (snap.t > t_report + 1e-12) break;
    const evol::FieldState plus = evol::free_propagate(vT, vtT, snap.t - last.t);
    RadialProfile dv = spectral::resample(snap.f, grid4);
    RadialProfile dvt = spectral::resample(snap.f_t, grid4);
    for (std::size_t i = 0; i < dv.size(); ++i) {
      dv.samples[i] -= plus.f.samples[i];
      dvt.samples[i] -= plus.f_t.samples[i];
    }
    rep.times.push_back(snap.t);
    rep.defects.push_back(spectral::data_norm_D(dv, dvt, part));
  }

  if (rep.defects.size() < 4) {
    rep.warning = "trajectory too short for a scattering verdict";
    rep.verdict = ScatterVerdict::flat;
    return rep;
  }
  rep.peak_defect = *std::max_element(rep.defects.begin(), rep.defects.end());
  rep.final_defect = rep.defects.back();

  // least-squares slope of log defect over the last half of the record
  const std::size_t half = rep.defects.size() / 2;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i = half; i < rep.defects.size(); ++i) {
    if (rep.defects[i] <= 0.0) continue;
    const double x = rep.times[i];
    const double y = std::log(rep.defects[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++m;
  }
  rep.slope = (m >= 2) ? (m * sxy - sx * sy) / (m * sxx - sx * sx) : 0.0;
  rep.verdict = rep.slope < -0.02   ? ScatterVerdict::decaying
                : rep.slope > 0.02 ? ScatterVerdict::growing
                                   : ScatterVerdict::flat;
  return rep;
}

}  // namespace fadlab::diag

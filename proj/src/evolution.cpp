#include "fadlab/evolution.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "fadlab/coefficients.hpp"
#include "fadlab/hankel.hpp"
#include "fadlab/kernels.hpp"
#include "fadlab/special.hpp"

namespace fadlab::evol {
namespace {

using spectral::GridKind;
using spectral::RadialProfile;

// Ghost weights by constrained quartic extrapolation. Nodes sit at
// (i + 1/2) h; the ghost at -(g + 1/2) h is p(-(g+1/2)h) where p is the
// quartic through the first four nodes satisfying the axis constraint
// (p(0) = 0 for value-constrained, p'(0) = 0 for slope-constrained).
struct GhostWeights {
  std::array<double, 4> value[2];  // [ghost index][node index]
  std::array<double, 4> slope[2];
};

GhostWeights compute_ghost_weights() {
  GhostWeights gw;
  const double xs[4] = {0.5, 1.5, 2.5, 3.5};
  for (int mode = 0; mode < 2; ++mode) {
    // basis: value-constrained {x, x^2, x^3, x^4}; slope-constrained
    // {1, x^2, x^3, x^4}
    double A[4][4];
    for (int i = 0; i < 4; ++i)
      for (int b = 0; b < 4; ++b)
        A[i][b] = mode == 0 ? std::pow(xs[i], b + 1)
                            : (b == 0 ? 1.0 : std::pow(xs[i], b + 1));
    for (int g = 0; g < 2; ++g) {
      const double xg = -(g + 0.5);
      // solve A^T c = basis(xg) for the weight vector c (Cramer-free
      // Gaussian elimination on the 4x4 system)
      double M[4][5];
      for (int i = 0; i < 4; ++i) {
        for (int k = 0; k < 4; ++k) M[i][k] = A[k][i];  // transpose
        const int b = i;
        M[i][4] = mode == 0 ? std::pow(xg, b + 1)
                            : (b == 0 ? 1.0 : std::pow(xg, b + 1));
      }
      for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int rr = col + 1; rr < 4; ++rr)
          if (std::fabs(M[rr][col]) > std::fabs(M[piv][col])) piv = rr;
        for (int k = col; k < 5; ++k) std::swap(M[piv][k], M[col][k]);
        for (int rr = 0; rr < 4; ++rr) {
          if (rr == col) continue;
          const double fct = M[rr][col] / M[col][col];
          for (int k = col; k < 5; ++k) M[rr][k] -= fct * M[col][k];
        }
      }
      for (int i = 0; i < 4; ++i) {
        const double c = M[i][4] / M[i][i];
        if (mode == 0)
          gw.value[g][i] = c;
        else
          gw.slope[g][i] = c;
      }
    }
  }
  return gw;
}

const GhostWeights kGhost = compute_ghost_weights();

void fill_extended(const std::vector<double>& f, FieldForm form,
                   std::vector<double>& fe) {
  const std::size_t n = f.size();
  fe.resize(n + 4);
  std::copy(f.begin(), f.end(), fe.begin() + 2);
  const auto& axis =
      form == FieldForm::u_form ? kGhost.value : kGhost.slope;
  for (int g = 0; g < 2; ++g) {
    double a = 0.0, b = 0.0;
    for (int i = 0; i < 4; ++i) {
      a += axis[g][i] * f[i];
      b += kGhost.value[g][i] * f[n - 1 - i];  // outer: value 0 at r = R
    }
    fe[1 - g] = a;
    fe[n + 2 + g] = b;
  }
}

}  // namespace

void radial_derivs(const std::vector<double>& f, double dr, FieldForm form,
                   int spatial_order, std::vector<double>& fr,
                   std::vector<double>& frr) {
  static thread_local std::vector<double> fe;
  fill_extended(f, form, fe);
  const std::size_t n = f.size();
  fr.resize(n);
  frr.resize(n);
  const double* c = fe.data() + 2;
  if (spatial_order == 2) {
    const double i2 = 1.0 / (2.0 * dr), idd = 1.0 / (dr * dr);
    for (std::size_t i = 0; i < n; ++i) {
      fr[i] = (c[i + 1] - c[i - 1]) * i2;
      frr[i] = (c[i + 1] - 2.0 * c[i] + c[i - 1]) * idd;
    }
  } else if (spatial_order == 4) {
    const double i12 = 1.0 / (12.0 * dr), idd = 1.0 / (12.0 * dr * dr);
    for (std::size_t i = 0; i < n; ++i) {
      fr[i] = (-c[i + 2] + 8.0 * c[i + 1] - 8.0 * c[i - 1] + c[i - 2]) * i12;
      frr[i] = (-c[i + 2] + 16.0 * c[i + 1] - 30.0 * c[i] +
                16.0 * c[i - 1] - c[i - 2]) * idd;
    }
  } else {
    throw std::domain_error("radial_derivs: spatial_order must be 2 or 4");
  }
}

namespace {

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// core u-form acceleration; nonlinear=false drops everything but the 2d
// radial d'Alembertian linearization u_rr + u_r/r - u/r^2
void eval_rhs_u(const std::vector<double>& u, const std::vector<double>& ut,
                const std::vector<double>& r, double dr, int order,
                bool nonlinear, std::vector<double>& out) {
  static thread_local std::vector<double> ur, urr;
  radial_derivs(u, dr, FieldForm::u_form, order, ur, urr);
  const std::size_t n = u.size();
  out.resize(n);
  if (!nonlinear) {
    for (std::size_t i = 0; i < n; ++i)
      out[i] = urr[i] + ur[i] / r[i] - u[i] / (r[i] * r[i]);
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double v = u[i] / r[i];
    const double s1 = special::sinc(u[i]);
    const double s2u = special::sinc(2.0 * u[i]);
    const double p = v * v * s1 * s1;  // sin^2 u / r^2
    const double bracket =
        (1.0 - p) * ur[i] -
        s2u * v * (ut[i] * ut[i] - ur[i] * ur[i] + 1.0);
    out[i] = urr[i] + bracket / (r[i] * (1.0 + p));
  }
}

void eval_rhs_v(const std::vector<double>& v, const std::vector<double>& vt,
                const std::vector<double>& r, double dr, int order,
                bool nonlinear, std::vector<double>& out) {
  static thread_local std::vector<double> vr, vrr;
  radial_derivs(v, dr, FieldForm::v_form, order, vr, vrr);
  const std::size_t n = v.size();
  out.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = vrr[i] + 3.0 * vr[i] / r[i];
    if (!nonlinear) continue;
    const double u = r[i] * v[i];
    const double vi = v[i];
    const double phi = coef::phi_stable(vi, u);
    const double h1 = coef::h_tilde(coef::CoefficientId::h1, u) / phi;
    const double h2 = coef::h_tilde(coef::CoefficientId::h2, u) / phi;
    const double h3 = coef::h_tilde(coef::CoefficientId::h3, u) / phi;
    const double h4 = coef::h_tilde(coef::CoefficientId::h4, u) / phi;
    const double v3 = vi * vi * vi;
    out[i] -= h1 * v3 * vr[i] + h2 * v3 + h3 * v3 * vi * vi +
              h4 * vi * (vt[i] * vt[i] - vr[i] * vr[i]);
  }
}

void eval_rhs(FieldForm form, const std::vector<double>& f,
              const std::vector<double>& ft, const std::vector<double>& r,
              double dr, int order, bool nonlinear, std::vector<double>& out) {
  if (form == FieldForm::u_form)
    eval_rhs_u(f, ft, r, dr, order, nonlinear, out);
  else
    eval_rhs_v(f, ft, r, dr, order, nonlinear, out);
}

void check_finite(const std::vector<double>& x, const char* what) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!std::isfinite(x[i]))
      throw EvalError(std::string(what) + ": non-finite value at node " +
                      std::to_string(i));
}

}  // namespace

RadialProfile rhs_u(const FieldState& state, int spatial_order) {
  if (state.form != FieldForm::u_form)
    throw std::domain_error("rhs_u: state must be u-form");
  if (state.f.grid->kind != GridKind::uniform_cell)
    throw std::domain_error("rhs_u: needs a uniform cell-centered grid");
  RadialProfile out(state.f.grid);
  eval_rhs_u(state.f.samples, state.f_t.samples, state.f.grid->nodes,
             state.f.grid->spacing(), spatial_order, true, out.samples);
  check_finite(out.samples, "rhs_u");
  return out;
}

RadialProfile rhs_v(const FieldState& state, int spatial_order) {
  if (state.form != FieldForm::v_form)
    throw std::domain_error("rhs_v: state must be v-form");
  if (state.f.grid->kind != GridKind::uniform_cell)
    throw std::domain_error("rhs_v: needs a uniform cell-centered grid");
  RadialProfile out(state.f.grid);
  eval_rhs_v(state.f.samples, state.f_t.samples, state.f.grid->nodes,
             state.f.grid->spacing(), spatial_order, true, out.samples);
  check_finite(out.samples, "rhs_v");
  return out;
}

namespace {

struct Stepper {
  const SolverConfig& cfg;
  FieldForm form;
  const std::vector<double>& r;
  std::vector<double> sponge_sigma;

  std::vector<double> k1f, k1g, k2f, k2g, k3f, k3g, k4f, k4g, tf, tg, acc;

  Stepper(const SolverConfig& c, FieldForm fo, const std::vector<double>& rr)
      : cfg(c), form(fo), r(rr) {
    if (cfg.sponge) {
      sponge_sigma.resize(r.size(), 0.0);
      const double r0 = 0.9 * cfg.cutoff;
      for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] > r0) {
          const double x = (r[i] - r0) / (cfg.cutoff - r0);
          sponge_sigma[i] = 5.0 * x * x * x;
        }
    }
  }

  void accel(const std::vector<double>& f, const std::vector<double>& g,
             std::vector<double>& out) {
    eval_rhs(form, f, g, r, cfg.dr(), cfg.spatial_order, cfg.nonlinear, out);
    if (!sponge_sigma.empty())
      for (std::size_t i = 0; i < out.size(); ++i)
        out[i] -= sponge_sigma[i] * g[i];
  }

  void rk4(std::vector<double>& f, std::vector<double>& g, double dt) {
    const std::size_t n = f.size();
    k1f = g;
    accel(f, g, k1g);
    kernels::axpby(1.0, f.data(), 0.5 * dt, k1f.data(), tf.data(), n);
    kernels::axpby(1.0, g.data(), 0.5 * dt, k1g.data(), tg.data(), n);
    k2f = tg;
    accel(tf, tg, k2g);
    kernels::axpby(1.0, f.data(), 0.5 * dt, k2f.data(), tf.data(), n);
    kernels::axpby(1.0, g.data(), 0.5 * dt, k2g.data(), tg.data(), n);
    k3f = tg;
    accel(tf, tg, k3g);
    kernels::axpby(1.0, f.data(), dt, k3f.data(), tf.data(), n);
    kernels::axpby(1.0, g.data(), dt, k3g.data(), tg.data(), n);
    k4f = tg;
    accel(tf, tg, k4g);
    const double w = dt / 6.0;
    kernels::axpy(w, k1f.data(), f.data(), n);
    kernels::axpy(2.0 * w, k2f.data(), f.data(), n);
    kernels::axpy(2.0 * w, k3f.data(), f.data(), n);
    kernels::axpy(w, k4f.data(), f.data(), n);
    kernels::axpy(w, k1g.data(), g.data(), n);
    kernels::axpy(2.0 * w, k2g.data(), g.data(), n);
    kernels::axpy(2.0 * w, k3g.data(), g.data(), n);
    kernels::axpy(w, k4g.data(), g.data(), n);
  }

  void resize(std::size_t n) {
    for (auto* p : {&k1f, &k1g, &k2f, &k2g, &k3f, &k3g, &k4f, &k4g, &tf, &tg,
                    &acc})
      p->resize(n);
  }
};

}  // namespace

Trajectory evolve(const FieldState& initial, const SolverConfig& cfg) {
  Trajectory traj;
  traj.config = cfg;
  if (cfg.cfl > 0.9 || cfg.cfl <= 0.0) {
    traj.status = TrajectoryStatus::cfl_violation;
    return traj;
  }
  const auto& grid = initial.f.grid;
  if (grid->kind != GridKind::uniform_cell)
    throw std::domain_error("evolve: needs a uniform cell-centered grid");
  const std::size_t n = grid->size();
  const double dt = cfg.dt();
  const long nsteps = std::lround(cfg.horizon / dt);

  std::vector<double> f = initial.f.samples;
  std::vector<double> g = initial.f_t.samples;
  Stepper st(cfg, initial.form, grid->nodes);
  st.resize(n);

  auto record = [&](double t, const std::vector<double>& fv,
                    const std::vector<double>& gv) {
    FieldState s;
    s.t = t;
    s.form = initial.form;
    s.f.grid = grid;
    s.f.samples = fv;
    s.f_t.grid = grid;
    s.f_t.samples = gv;
    traj.snapshots.push_back(std::move(s));
  };

  auto blown = [&](const std::vector<double>& fv,
                   const std::vector<double>& gv) {
    const double mf = kernels::max_abs(fv.data(), n);
    const double mg = kernels::max_abs(gv.data(), n);
    return !std::isfinite(mf) || !std::isfinite(mg) || mf > cfg.ceiling_f ||
           mg > cfg.ceiling_ft;
  };

  record(initial.t, f, g);

  if (cfg.scheme == Scheme::rk4) {
    for (long step = 1; step <= nsteps; ++step) {
      try {
        st.rk4(f, g, dt);
      } catch (const std::exception&) {
        traj.status = TrajectoryStatus::blowup_detected;
        return traj;
      }
      if (blown(f, g)) {
        traj.status = TrajectoryStatus::blowup_detected;
        return traj;
      }
      if (step % cfg.snapshot_stride == 0 || step == nsteps)
        record(initial.t + step * dt, f, g);
    }
  } else {
    // three-level symmetric scheme; the velocity-dependent force is closed
    // by fixed-point iteration on u_t = (u_{n+1} - u_{n-1}) / (2 dt)
    std::vector<double> fprev(n), fnext(n), w(n), a(n);
    st.accel(f, g, a);
    for (std::size_t i = 0; i < n; ++i)
      fprev[i] = f[i] - dt * g[i] + 0.5 * dt * dt * a[i];
    for (long step = 1; step <= nsteps; ++step) {
      w = g;
      for (int it = 0; it < 5; ++it) {
        st.accel(f, w, a);
        for (std::size_t i = 0; i < n; ++i) {
          fnext[i] = 2.0 * f[i] - fprev[i] + dt * dt * a[i];
          w[i] = (fnext[i] - fprev[i]) / (2.0 * dt);
        }
      }
      fprev.swap(f);
      f.swap(fnext);
      g = w;
      if (blown(f, g)) {
        traj.status = TrajectoryStatus::blowup_detected;
        return traj;
      }
      if (step % cfg.snapshot_stride == 0 || step == nsteps)
        record(initial.t + step * dt, f, g);
    }
  }
  traj.status = TrajectoryStatus::completed;
  return traj;
}

FieldState free_propagate(const spectral::RadialProfile& v0,
                          const spectral::RadialProfile& v1, double t) {
  const auto& grid = v0.grid;
  if (grid->kind != GridKind::bessel || grid->dim != 4)
    throw std::domain_error("free_propagate: needs a bessel R^4 grid");
  auto ht = spectral::HankelTransform::get(grid);
  RadialProfile h0 = ht->forward(v0);
  RadialProfile h1 = ht->forward(v1);
  const std::size_t n = grid->size();
  RadialProfile vh(grid), vth(grid);
  for (std::size_t k = 0; k < n; ++k) {
    const double rho = grid->freqs[k];
    const double c = std::cos(t * rho);
    const double s = std::sin(t * rho);
    vh.samples[k] = c * h0.samples[k] + t * special::sinc(t * rho) * h1.samples[k];
    vth.samples[k] = -rho * s * h0.samples[k] + c * h1.samples[k];
  }
  FieldState out;
  out.t = t;
  out.form = FieldForm::v_form;
  out.f = ht->inverse(vh);
  out.f_t = ht->inverse(vth);
  return out;
}

FieldState duhamel(const std::vector<double>& times,
                   const std::vector<spectral::RadialProfile>& rhs,
                   std::size_t idx) {
  if (times.size() != rhs.size() || rhs.empty())
    throw std::domain_error("duhamel: times/rhs size mismatch");
  if (idx >= times.size()) throw std::domain_error("duhamel: bad index");
  const auto& grid = rhs.front().grid;
  auto ht = spectral::HankelTransform::get(grid);
  const std::size_t n = grid->size();
  const double t = times[idx];

  // Box v = F with Box = -d_tt + Delta and zero data transforms to
  // vhat_tt + rho^2 vhat = -Fhat, so
  //   vhat(t) = -int_0^t sin((t-s) rho)/rho Fhat(s) ds
  // (trapezoid in s); the sign makes Box(duhamel(F)) = F hold exactly.
  RadialProfile vh(grid), vth(grid);
  std::vector<double> fhat(n);
  for (std::size_t m = 0; m <= idx; ++m) {
    ht->forward(rhs[m].samples.data(), fhat.data());
    const double ds = (idx == 0) ? 0.0
                     : (m == 0 ? 0.5 * (times[1] - times[0])
                        : (m == idx ? 0.5 * (times[idx] - times[idx - 1])
                                    : 0.5 * (times[m + 1] - times[m - 1])));
    const double tau = t - times[m];
    for (std::size_t k = 0; k < n; ++k) {
      const double rho = grid->freqs[k];
      vh.samples[k] -= ds * tau * special::sinc(tau * rho) * fhat[k];
      vth.samples[k] -= ds * std::cos(tau * rho) * fhat[k];
    }
  }
  FieldState out;
  out.t = t;
  out.form = FieldForm::v_form;
  out.f = ht->inverse(vh);
  out.f_t = ht->inverse(vth);
  return out;
}

FieldState initial_data(DataFamily family, double delta,
                        const spectral::GridPtr& grid, FieldForm form,
                        const DataParams& params) {
  FieldState s;
  s.t = 0.0;
  s.form = form;
  s.f = RadialProfile(grid);
  s.f_t = RadialProfile(grid);
  const double w = params.width;
  auto bump_u = [&](double r) -> double {
    switch (family) {
      case DataFamily::gauss_bump:
        return delta * r * r * std::exp(-r * r / (w * w));
      case DataFamily::poly_bump: {
        const double x = r / (4.0 * w);
        if (x >= 1.0) return 0.0;
        const double q = 1.0 - x * x;
        return delta * r * r * q * q * q * q;
      }
      case DataFamily::two_bump: {
        const double r2 = params.center + 3.0 * w;
        return delta * r * r * std::exp(-r * r / (w * w)) +
               0.5 * delta * r * r * std::exp(-(r - r2) * (r - r2) / (w * w));
      }
    }
    return 0.0;
  };
  auto bump_v = [&](double r) -> double {
    switch (family) {
      case DataFamily::gauss_bump:
        return delta * std::exp(-r * r / (w * w));
      case DataFamily::poly_bump: {
        const double x = r / (4.0 * w);
        if (x >= 1.0) return 0.0;
        const double q = 1.0 - x * x;
        return delta * q * q * q * q;
      }
      case DataFamily::two_bump: {
        const double r2 = params.center + 3.0 * w;
        return delta * std::exp(-r * r / (w * w)) +
               0.5 * delta * std::exp(-(r - r2) * (r - r2) / (w * w));
      }
    }
    return 0.0;
  };
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const double r = grid->nodes[i];
    s.f.samples[i] = form == FieldForm::u_form ? bump_u(r) : bump_v(r);
  }
  if (params.outgoing) {
    // outgoing approximation u_t = -u_r by centered differences
    static thread_local std::vector<double> fr, frr;
    radial_derivs(s.f.samples, grid->spacing(), form, 4, fr, frr);
    for (std::size_t i = 0; i < grid->size(); ++i) s.f_t.samples[i] = -fr[i];
  }
  return s;
}

}  // namespace fadlab::evol

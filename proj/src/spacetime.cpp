#include "fadlab/spacetime.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "fadlab/besov.hpp"
#include "fadlab/hankel.hpp"
#include "fadlab/kernels.hpp"

namespace fadlab::st {
namespace {

using spectral::HankelTransform;

constexpr double kTwoPi = 2.0 * M_PI;

// mollifier smoothstep rising 0 -> 1 on [0, 1]
double smoothstep(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

// process-wide FFT plans per length; fftw planning is not thread-safe
class FftCache {
 public:
  static FftCache& instance() {
    static FftCache c;
    return c;
  }
  // in/out length n, interleaved complex; sign = FFTW_FORWARD/BACKWARD
  void run(std::vector<std::complex<double>>& buf, int n, int sign) {
    fftw_plan p;
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto& slot = plans_[{n, sign}];
      if (!slot) {
        scratch_.assign(n, {0.0, 0.0});
        slot = fftw_plan_dft_1d(
            n, reinterpret_cast<fftw_complex*>(scratch_.data()),
            reinterpret_cast<fftw_complex*>(scratch_.data()), sign,
            FFTW_ESTIMATE);
      }
      p = slot;
    }
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(buf.data()),
                     reinterpret_cast<fftw_complex*>(buf.data()));
  }

 private:
  FftCache() = default;
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
  std::vector<std::complex<double>> scratch_;
};

// frequency-side L2 weights: ||g||^2_{L2(R^4)} = sum_j W_j |ghat_j|^2
std::vector<double> l2x_weights(const spectral::RadialGrid& g) {
  std::vector<double> w(g.size());
  const double c = 2.0 * M_PI * M_PI / std::pow(kTwoPi, 4);
  for (std::size_t j = 0; j < g.size(); ++j)
    w[j] = c * g.wf_rdr[j] * g.freqs[j] * g.freqs[j];
  return w;
}

}  // namespace

double TimeWindow::mask(double t) const {
  const double w = taper_frac * span();
  if (w <= 0.0) return 1.0;
  const double up = smoothstep((t - t0) / w);
  const double dn = smoothstep((t1 - t) / w);
  return up * dn;
}

SpacetimeField::SpacetimeField(const TimeWindow& w, spectral::GridPtr g)
    : window(w), rgrid(std::move(g)),
      samples(static_cast<std::size_t>(w.nt) * rgrid->size(), 0.0) {}

double SpacetimeSpectrum::modulation(int k, int j) const {
  const double tau = taus[k];
  const double rho = rgrid->freqs[j];
  const double mag = std::sqrt(tau * tau + rho * rho);
  if (mag == 0.0) return 0.0;
  return std::fabs(tau * tau - rho * rho) / mag;
}

double SpacetimeSpectrum::magnitude(int k, int j) const {
  const double tau = taus[k];
  const double rho = rgrid->freqs[j];
  return std::sqrt(tau * tau + rho * rho);
}

SpacetimeSpectrum st_transform(const SpacetimeField& w) {
  const int nt = w.window.nt;
  const std::size_t nr = w.nr();
  const double dt = w.window.dt();

  SpacetimeSpectrum s;
  s.window = w.window;
  s.rgrid = w.rgrid;
  s.data.assign(static_cast<std::size_t>(nt) * nr, {0.0, 0.0});
  s.taus.resize(nt);
  for (int k = 0; k < nt; ++k) {
    const int ks = k < nt / 2 ? k : k - nt;
    s.taus[k] = kTwoPi * ks / w.window.span();
  }

  // window in t, track removed mass
  std::vector<double> tapered(w.samples.size());
  double full = 0.0, kept = 0.0;
  for (int j = 0; j < nt; ++j) {
    const double m = w.window.mask(w.window.time(j));
    for (std::size_t i = 0; i < nr; ++i) {
      const double v = w.samples[j * nr + i];
      tapered[j * nr + i] = m * v;
      full += v * v;
      kept += m * v * m * v;
    }
  }
  s.taper_fraction = full > 0.0 ? std::sqrt(std::max(0.0, 1.0 - kept / full))
                                : 0.0;

  // FFT along t per r column
  auto& fft = FftCache::instance();
  std::vector<std::complex<double>> col(nt);
  std::vector<std::complex<double>> spec_t(static_cast<std::size_t>(nt) * nr);
  for (std::size_t i = 0; i < nr; ++i) {
    for (int j = 0; j < nt; ++j) col[j] = tapered[j * nr + i];
    fft.run(col, nt, FFTW_FORWARD);
    for (int k = 0; k < nt; ++k) {
      // continuous-FT normalization with the window origin phase
      const std::complex<double> ph =
          std::polar(dt, -s.taus[k] * w.window.t0);
      spec_t[k * nr + i] = ph * col[k];
    }
  }

  // Hankel along r per tau row (real and imaginary parts separately)
  auto ht = HankelTransform::get(w.rgrid);
  std::vector<double> re(nr), im(nr), ore(nr), oim(nr);
  for (int k = 0; k < nt; ++k) {
    for (std::size_t i = 0; i < nr; ++i) {
      re[i] = spec_t[k * nr + i].real();
      im[i] = spec_t[k * nr + i].imag();
    }
    ht->forward(re.data(), ore.data());
    ht->forward(im.data(), oim.data());
    for (std::size_t i = 0; i < nr; ++i)
      s.data[k * nr + i] = {ore[i], oim[i]};
  }

  // resolution check: top tau octave should carry negligible mass
  const auto wl2 = l2x_weights(*w.rgrid);
  const double tau_max = kTwoPi * (nt / 2) / w.window.span();
  double total = 0.0, top = 0.0;
  for (int k = 0; k < nt; ++k)
    for (std::size_t i = 0; i < nr; ++i) {
      const double e = wl2[i] * std::norm(s.data[k * nr + i]);
      total += e;
      if (std::fabs(s.taus[k]) > 0.5 * tau_max) top += e;
    }
  if (total > 0.0 && top / total > 0.05)
    throw spectral::ResolutionError(
        "st_transform: >5% spectral mass in the top tau octave");
  return s;
}

SpacetimeField st_inverse(const SpacetimeSpectrum& s) {
  const int nt = s.window.nt;
  const std::size_t nr = s.nr();

  // inverse Hankel per tau row
  auto ht = HankelTransform::get(s.rgrid);
  std::vector<std::complex<double>> spec_t(s.data.size());
  std::vector<double> re(nr), im(nr), ore(nr), oim(nr);
  for (int k = 0; k < nt; ++k) {
    for (std::size_t i = 0; i < nr; ++i) {
      re[i] = s.data[k * nr + i].real();
      im[i] = s.data[k * nr + i].imag();
    }
    ht->inverse(re.data(), ore.data());
    ht->inverse(im.data(), oim.data());
    for (std::size_t i = 0; i < nr; ++i) spec_t[k * nr + i] = {ore[i], oim[i]};
  }

  // inverse FFT per r column with the origin phase undone
  auto& fft = FftCache::instance();
  SpacetimeField w(s.window, s.rgrid);
  std::vector<std::complex<double>> col(nt);
  const double norm = 1.0 / s.window.span();
  for (std::size_t i = 0; i < nr; ++i) {
    for (int k = 0; k < nt; ++k)
      col[k] = spec_t[k * nr + i] * std::polar(1.0, s.taus[k] * s.window.t0);
    fft.run(col, nt, FFTW_BACKWARD);
    for (int j = 0; j < nt; ++j) w.samples[j * nr + i] = norm * col[j].real();
  }
  return w;
}

void apply_multiplier(SpacetimeSpectrum& s,
                      const std::function<double(double, double)>& m) {
  const int nt = s.window.nt;
  const std::size_t nr = s.nr();
  for (int k = 0; k < nt; ++k) {
    const double tau = s.taus[k];
    for (std::size_t j = 0; j < nr; ++j)
      s.data[k * nr + j] *= m(tau, s.rgrid->freqs[j]);
  }
}

namespace {

// masked copy through the interleaved-complex kernel
SpacetimeSpectrum masked(const SpacetimeSpectrum& s,
                         const std::function<double(int, std::size_t)>& m) {
  SpacetimeSpectrum out = s;
  const int nt = s.window.nt;
  const std::size_t nr = s.nr();
  static thread_local std::vector<double> mask;
  mask.resize(static_cast<std::size_t>(nt) * nr);
  for (int k = 0; k < nt; ++k)
    for (std::size_t j = 0; j < nr; ++j) mask[k * nr + j] = m(k, j);
  kernels::cmul_mask(reinterpret_cast<double*>(out.data.data()), mask.data(),
                     mask.size());
  return out;
}

}  // namespace

SpacetimeSpectrum a_band(const SpacetimeSpectrum& s, double lambda) {
  return masked(s, [&](int k, std::size_t j) {
    return spectral::chi_cut(s.magnitude(k, j) / lambda);
  });
}

SpacetimeSpectrum b_band(const SpacetimeSpectrum& s, double mu) {
  return masked(s, [&](int k, std::size_t j) {
    return spectral::chi_cut(s.modulation(k, j) / mu);
  });
}

SpacetimeSpectrum b_below(const SpacetimeSpectrum& s, double mu) {
  return masked(s, [&](int k, std::size_t j) {
    return spectral::theta_cut(s.modulation(k, j) / mu);
  });
}

double l2_norm(const SpacetimeSpectrum& s) {
  const auto wl2 = l2x_weights(*s.rgrid);
  const int nt = s.window.nt;
  const std::size_t nr = s.nr();
  double acc = 0.0;
  for (int k = 0; k < nt; ++k)
    for (std::size_t j = 0; j < nr; ++j)
      acc += wl2[j] * std::norm(s.data[k * nr + j]);
  // dtau / (2 pi) = 1 / span
  return std::sqrt(acc / s.window.span());
}

std::vector<double> l2x_slices(const SpacetimeSpectrum& s) {
  const int nt = s.window.nt;
  const std::size_t nr = s.nr();
  const auto wl2 = l2x_weights(*s.rgrid);
  auto& fft = FftCache::instance();

  // partial inverse: t only, x stays spectral (Plancherel per slice)
  std::vector<std::complex<double>> col(nt);
  std::vector<double> acc(static_cast<std::size_t>(nt), 0.0);
  const double norm = 1.0 / s.window.span();
  for (std::size_t j = 0; j < nr; ++j) {
    bool any = false;
    for (int k = 0; k < nt; ++k) {
      const auto& z = s.data[k * nr + j];
      any = any || (z.real() != 0.0 || z.imag() != 0.0);
      col[k] = z * std::polar(1.0, s.taus[k] * s.window.t0);
    }
    if (!any) continue;  // band-limited fields leave most columns empty
    fft.run(col, nt, FFTW_BACKWARD);
    for (int jt = 0; jt < nt; ++jt)
      acc[jt] += wl2[j] * std::norm(norm * col[jt]);
  }
  for (int jt = 0; jt < nt; ++jt) acc[jt] = std::sqrt(acc[jt]);
  return acc;
}

namespace {

// Modulation floor: nominally lambda 2^-10, but a window of span T cannot
// resolve modulations below ~2 pi / T, and weighting unresolvable mass by
// the nominal floor would underestimate X^{1/2}. The floor therefore sits
// at max(lambda 2^-10, 2 pi / T), capped at lambda.
double mu_floor(double lambda, const TimeWindow& win) {
  return std::min(lambda,
                  std::max(lambda * std::ldexp(1.0, -10),
                           kTwoPi / win.span()));
}

// dyadic modulation set for a lambda band: cumulative floor band, chi bands
// above it up to 2 lambda
std::vector<double> mu_set(double lambda, const TimeWindow& win) {
  std::vector<double> mus;
  for (double mu = mu_floor(lambda, win); mu <= 2.0 * lambda + 1e-12;
       mu *= 2.0)
    mus.push_back(mu);
  if (mus.empty()) mus.push_back(mu_floor(lambda, win));
  return mus;
}

}  // namespace

double x_half_norm(const SpacetimeSpectrum& w_lam, double lambda) {
  const auto wl2 = l2x_weights(*w_lam.rgrid);
  const int nt = w_lam.window.nt;
  const std::size_t nr = w_lam.nr();
  const auto mus = mu_set(lambda, w_lam.window);
  std::vector<double> band_mass(mus.size(), 0.0);
  for (int k = 0; k < nt; ++k)
    for (std::size_t j = 0; j < nr; ++j) {
      const double e = wl2[j] * std::norm(w_lam.data[k * nr + j]);
      if (e == 0.0) continue;
      const double m = w_lam.modulation(k, j);
      // cumulative theta mask on the floor band, chi bands above
      const double c0 = spectral::theta_cut(m / mus[0]);
      band_mass[0] += e * c0 * c0;
      for (std::size_t b = 1; b < mus.size(); ++b) {
        const double c = spectral::chi_cut(m / mus[b]);
        if (c != 0.0) band_mass[b] += e * c * c;
      }
    }
  double acc = 0.0;
  for (std::size_t b = 0; b < mus.size(); ++b)
    acc += std::sqrt(mus[b]) *
           std::sqrt(band_mass[b] / w_lam.window.span());
  return acc;
}

double y_norm(const SpacetimeSpectrum& w_lam, double lambda) {
  // L^inf_t L^2_x on the untapered interior
  const auto slices = l2x_slices(w_lam);
  const int nt = w_lam.window.nt;
  double linf = 0.0;
  for (int j = 0; j < nt; ++j)
    if (w_lam.window.interior(w_lam.window.time(j)))
      linf = std::max(linf, slices[j]);

  // lambda^{-1} ||Box w||_{L^1_t L^2_x}, Box spectrally as (xi^2 - tau^2)
  SpacetimeSpectrum box = w_lam;
  apply_multiplier(box, [](double tau, double rho) {
    return rho * rho - tau * tau;
  });
  const auto bslices = l2x_slices(box);
  double l1 = 0.0;
  for (int j = 0; j < nt; ++j)
    if (w_lam.window.interior(w_lam.window.time(j)))
      l1 += bslices[j] * w_lam.window.dt();
  return linf + l1 / lambda;
}

FSurrogate f_norm_surrogate(const SpacetimeSpectrum& w_lam, double lambda) {
  FSurrogate best;
  best.value = -1.0;
  auto consider = [&](double xp, double yp, double mu0) {
    if (best.value < 0.0 || xp + yp < best.value) {
      best.value = xp + yp;
      best.mu0 = mu0;
      best.x_part = xp;
      best.y_part = yp;
    }
  };
  // trivial decompositions first (the infimum includes them): all-X and
  // all-Y; then the one-parameter threshold family
  consider(x_half_norm(w_lam, lambda), 0.0, 2.0 * lambda);
  consider(0.0, y_norm(w_lam, lambda), 0.0);
  for (double mu0 = mu_floor(lambda, w_lam.window); mu0 <= lambda + 1e-12;
       mu0 *= 2.0) {
    SpacetimeSpectrum low = b_below(w_lam, mu0);
    SpacetimeSpectrum high = w_lam;
    for (std::size_t i = 0; i < high.data.size(); ++i)
      high.data[i] -= low.data[i];
    consider(x_half_norm(low, lambda), y_norm(high, lambda), mu0);
  }
  if (best.value < 0.0) best.value = 0.0;
  return best;
}

SurrogateNormReport composite_x_norm(const SpacetimeSpectrum& s,
                                     const spectral::DyadicPartition& part) {
  SurrogateNormReport rep;
  rep.taper_fraction = s.taper_fraction;
  const auto wl2 = l2x_weights(*s.rgrid);
  for (double lambda : part.lambdas) {
    SpacetimeSpectrum wl = a_band(s, lambda);
    double mass = 0.0;
    for (std::size_t i = 0; i < wl.data.size(); ++i)
      mass += wl2[i % s.nr()] * std::norm(wl.data[i]);
    if (mass <= 0.0) continue;
    const FSurrogate f = f_norm_surrogate(wl, lambda);
    SurrogateBandReport band;
    band.lambda = lambda;
    band.f_surrogate = f.value;
    band.mu0 = f.mu0;
    band.x_half = x_half_norm(wl, lambda);
    band.y = y_norm(wl, lambda);
    rep.bands.push_back(band);
    rep.f += lambda * lambda * f.value;   // n/2 = 2
    rep.grad_f += lambda * f.value;       // (n-2)/2 = 1
  }
  rep.x = rep.f + rep.grad_f;
  return rep;
}

SurrogateNormReport composite_x_norm(const SpacetimeField& w,
                                     const spectral::DyadicPartition& part) {
  return composite_x_norm(st_transform(w), part);
}

double lqlr_norm(const SpacetimeField& w, double q, double r_exp,
                 bool weight_r) {
  const int nt = w.window.nt;
  const std::size_t nr = w.nr();
  spectral::RadialProfile slice(w.rgrid);
  const bool qinf = std::isinf(q);
  double acc = 0.0, worst = 0.0;
  int used = 0;
  for (int j = 0; j < nt; ++j) {
    if (!w.window.interior(w.window.time(j))) continue;
    for (std::size_t i = 0; i < nr; ++i)
      slice.samples[i] =
          weight_r ? w.rgrid->nodes[i] * w.at(j, i) : w.at(j, i);
    const double ln = spectral::lp_norm(slice, r_exp);
    if (qinf)
      worst = std::max(worst, ln);
    else
      acc += std::pow(ln, q) * w.window.dt();
    ++used;
  }
  if (used == 0) return 0.0;
  return qinf ? worst : std::pow(acc, 1.0 / q);
}

SpacetimeSpectrum synthesize_spectrum(
    const TimeWindow& win, const spectral::GridPtr& grid,
    const std::function<double(double, double)>& env) {
  SpacetimeSpectrum s;
  s.window = win;
  s.rgrid = grid;
  const std::size_t nr = grid->size();
  s.data.assign(static_cast<std::size_t>(win.nt) * nr, {0.0, 0.0});
  s.taus.resize(win.nt);
  for (int k = 0; k < win.nt; ++k) {
    const int ks = k < win.nt / 2 ? k : k - win.nt;
    s.taus[k] = kTwoPi * ks / win.span();
  }
  for (int k = 0; k < win.nt; ++k)
    for (std::size_t j = 0; j < nr; ++j)
      s.data[k * nr + j] = env(std::fabs(s.taus[k]), grid->freqs[j]);
  return s;
}

SpacetimeField synthesize_packet(
    const TimeWindow& win, const spectral::GridPtr& grid,
    const std::function<double(double, double)>& env) {
  return st_inverse(synthesize_spectrum(win, grid, env));
}

SpacetimeField product(const SpacetimeField& a, const SpacetimeField& b) {
  if (a.rgrid != b.rgrid || a.window.nt != b.window.nt)
    throw std::domain_error("product: mismatched spacetime sampling");
  SpacetimeField out(a.window, a.rgrid);
  kernels::mul(a.samples.data(), b.samples.data(), out.samples.data(),
               out.samples.size());
  return out;
}

void scale_by_r_power(SpacetimeField& w, int power) {
  const std::size_t nr = w.nr();
  for (int j = 0; j < w.window.nt; ++j)
    for (std::size_t i = 0; i < nr; ++i)
      w.samples[j * nr + i] *= std::pow(w.rgrid->nodes[i], power);
}

}  // namespace fadlab::st

#include "fadlab/besov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fadlab/kernels.hpp"

namespace fadlab::spectral {
namespace {

double surface_measure(int dim) {
  return dim == 2 ? 2.0 * M_PI : 2.0 * M_PI * M_PI;  // sigma_1, sigma_3
}

// || g ||_{L^2(R^n)} from frequency samples ghat (Plancherel route)
double l2_from_hat(const RadialGrid& g, const double* ghat) {
  const std::size_t n = g.size();
  double s = 0.0;
  if (g.dim == 2) {
    s = kernels::dot3(ghat, ghat, g.wf_rdr.data(), n);
  } else {
    for (std::size_t k = 0; k < n; ++k) {
      const double x = g.freqs[k] * ghat[k];
      s += g.wf_rdr[k] * x * x;
    }
  }
  return std::sqrt(surface_measure(g.dim) * s) /
         std::pow(2.0 * M_PI, 0.5 * g.dim);
}

}  // namespace

double lp_norm(const RadialProfile& f, double p) {
  const auto& g = *f.grid;
  const std::size_t n = g.size();
  if (p == std::numeric_limits<double>::infinity())
    return kernels::max_abs(f.samples.data(), n);
  if (!(p >= 1.0)) throw std::domain_error("lp_norm: p must be >= 1");
  const double sigma = surface_measure(g.dim);
  if (p == 2.0 && g.kind == GridKind::bessel) {
    double s = 0.0;
    if (g.dim == 2) {
      s = kernels::dot3(f.samples.data(), f.samples.data(), g.w_rdr.data(), n);
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        const double x = g.nodes[i] * f.samples[i];
        s += g.w_rdr[i] * x * x;
      }
    }
    return std::sqrt(sigma * s);
  }
  const double s = kernels::pow_sum(f.samples.data(), g.weights.data(), p, n);
  return std::pow(sigma * s, 1.0 / p);
}

RadialProfile band_project(const RadialProfile& f, double lambda,
                           const DyadicPartition& part) {
  if (!part.contains(lambda))
    throw BandError("band_project: lambda outside the resolved band set");
  auto ht = HankelTransform::get(f.grid);
  RadialProfile fhat = ht->forward(f);
  const auto& rho = f.grid->freqs;
  for (std::size_t k = 0; k < fhat.size(); ++k)
    fhat.samples[k] *= chi_cut(rho[k] / lambda);
  return ht->inverse(fhat);
}

BesovResult besov_norm_hat(const RadialProfile& fhat, const BesovSpec& spec,
                           const DyadicPartition& part) {
  if (spec.q != 1.0) throw std::domain_error("besov_norm: q must be 1");
  const auto& g = *fhat.grid;
  if (g.dim != spec.n) throw std::domain_error("besov_norm: dim mismatch");
  const std::size_t n = g.size();
  auto ht = HankelTransform::get(fhat.grid);
  const auto& rho = g.freqs;

  BesovResult res;
  std::vector<double> masked(n), band(n);
  const bool inf_p = spec.p == std::numeric_limits<double>::infinity();
  for (double lambda : part.lambdas) {
    // skip bands with no spectral support on the grid
    if (2.0 * lambda < rho.front() || 0.5 * lambda > rho.back()) continue;
    bool any = false;
    for (std::size_t k = 0; k < n; ++k) {
      const double c = chi_cut(rho[k] / lambda);
      masked[k] = c * fhat.samples[k];
      any = any || (c != 0.0 && fhat.samples[k] != 0.0);
    }
    if (!any) continue;
    double nrm;
    if (spec.p == 2.0) {
      nrm = l2_from_hat(g, masked.data());
    } else {
      ht->inverse(masked.data(), band.data());
      RadialProfile bp;
      bp.grid = fhat.grid;
      bp.samples.assign(band.begin(), band.end());
      nrm = inf_p ? kernels::max_abs(band.data(), n) : lp_norm(bp, spec.p);
    }
    res.value += std::pow(lambda, spec.s) * nrm;
  }

  // unresolved-tail estimate: relative L2 mass where the coverage is not 1
  double inside = 0.0, total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double m = (g.dim == 2) ? g.wf_rdr[k]
                                  : g.wf_rdr[k] * rho[k] * rho[k];
    const double e = m * fhat.samples[k] * fhat.samples[k];
    total += e;
    const double cov = part.coverage(rho[k]);
    inside += e * std::min(1.0, std::max(0.0, cov));
  }
  res.tail = total > 0.0 ? std::sqrt(std::max(0.0, 1.0 - inside / total)) : 0.0;
  return res;
}

BesovResult besov_norm(const RadialProfile& f, const BesovSpec& spec,
                       const DyadicPartition& part) {
  auto ht = HankelTransform::get(f.grid);
  return besov_norm_hat(ht->forward(f), spec, part);
}

double data_norm_D(const RadialProfile& v0, const RadialProfile& v1,
                   const DyadicPartition& part) {
  auto ht0 = HankelTransform::get(v0.grid);
  auto ht1 = HankelTransform::get(v1.grid);
  const RadialProfile h0 = ht0->forward(v0);
  const RadialProfile h1 = ht1->forward(v1);
  return besov_norm_hat(h0, {2.0, 2.0, 1.0, 4}, part).value +
         besov_norm_hat(h0, {1.0, 2.0, 1.0, 4}, part).value +
         besov_norm_hat(h1, {1.0, 2.0, 1.0, 4}, part).value +
         besov_norm_hat(h1, {0.0, 2.0, 1.0, 4}, part).value;
}

double norm_transition_ratio(const RadialProfile& u2, const BesovSpec& spec,
                             const GridPtr& grid4,
                             const DyadicPartition& part) {
  if (u2.grid->dim != 2)
    throw std::domain_error("norm_transition_ratio: u2 must live on R^2");
  // v4 = u2 / r on the R^4 grid
  RadialProfile v4 = resample(u2, grid4);
  for (std::size_t i = 0; i < v4.size(); ++i)
    v4.samples[i] /= grid4->nodes[i];
  BesovSpec s4 = spec;
  s4.n = 4;
  const double num = besov_norm(v4, s4, part).value;

  // r^{2/p - 1} u2 on the R^2 grid
  RadialProfile w2 = u2;
  const double e = 2.0 / spec.p - 1.0;
  for (std::size_t i = 0; i < w2.size(); ++i)
    w2.samples[i] *= std::pow(u2.grid->nodes[i], e);
  BesovSpec s2 = spec;
  s2.n = 2;
  const double den = besov_norm(w2, s2, part).value;
  if (den == 0.0) return 0.0;
  return num / den;
}

}  // namespace fadlab::spectral

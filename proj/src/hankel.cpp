#include "fadlab/hankel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

#include "fadlab/kernels.hpp"
#include "fadlab/special.hpp"

namespace fadlab::spectral {
namespace {

std::mutex g_mutex;
std::map<const RadialGrid*, std::shared_ptr<const HankelTransform>> g_cache;

}  // namespace

HankelTransform::HankelTransform(GridPtr grid) : grid_(std::move(grid)) {
  if (grid_->kind != GridKind::bessel)
    throw std::domain_error("HankelTransform requires a bessel grid");
  const int nu = grid_->order();
  const std::size_t n = grid_->size();
  (void)nu;

  const double tp = std::pow(2.0 * M_PI, 0.5 * grid_->dim);
  fwd_in_.resize(n);
  fwd_out_.resize(n);
  inv_in_.resize(n);
  inv_out_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double rnu = (nu == 0) ? 1.0 : grid_->nodes[i];
    const double pnu = (nu == 0) ? 1.0 : grid_->freqs[i];
    fwd_in_[i] = grid_->w_rdr[i] * rnu;
    fwd_out_[i] = tp / pnu;
    inv_in_[i] = grid_->wf_rdr[i] * pnu;
    inv_out_[i] = 1.0 / (tp * rnu);
  }
}

std::shared_ptr<const HankelTransform> HankelTransform::get(
    const GridPtr& grid) {
  {
    std::lock_guard<std::mutex> lock(g_mutex);
    auto it = g_cache.find(grid.get());
    if (it != g_cache.end()) return it->second;
  }
  std::shared_ptr<const HankelTransform> t(new HankelTransform(grid));
  std::lock_guard<std::mutex> lock(g_mutex);
  return g_cache.emplace(grid.get(), std::move(t)).first->second;
}

void HankelTransform::forward(const double* f, double* fhat) const {
  const std::size_t n = grid_->size();
  std::vector<double> tmp(n), out(n);
  kernels::mul(fwd_in_.data(), f, tmp.data(), n);
  kernels::matvec(grid_->kernel.data(), tmp.data(), out.data(), n, n);
  kernels::mul(fwd_out_.data(), out.data(), fhat, n);
}

void HankelTransform::inverse(const double* fhat, double* f) const {
  const std::size_t n = grid_->size();
  std::vector<double> tmp(n), out(n);
  kernels::mul(inv_in_.data(), fhat, tmp.data(), n);
  kernels::matvec(grid_->kernel.data(), tmp.data(), out.data(), n, n);
  kernels::mul(inv_out_.data(), out.data(), f, n);
}

RadialProfile HankelTransform::forward(const RadialProfile& f) const {
  if (f.grid != grid_) throw std::domain_error("forward: profile grid mismatch");
  RadialProfile out(grid_);
  forward(f.samples.data(), out.samples.data());
  return out;
}

RadialProfile HankelTransform::inverse(const RadialProfile& fhat) const {
  if (fhat.grid != grid_)
    throw std::domain_error("inverse: profile grid mismatch");
  RadialProfile out(grid_);
  inverse(fhat.samples.data(), out.samples.data());
  return out;
}

}  // namespace fadlab::spectral

#include "fadlab/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include "fadlab/kernels.hpp"
#include "fadlab/special.hpp"

namespace fadlab::spectral {
namespace {

std::mutex g_cache_mutex;
std::map<std::tuple<int, double, int, int>, GridPtr> g_cache;

// Gauss-Legendre 24-point nodes/weights on [-1, 1] (generated once by
// Newton iteration on P_24; used for the per-interval moments below).
struct GL24 {
  std::array<double, 24> x{}, w{};
  GL24() {
    const int n = 24;
    for (int i = 0; i < n; ++i) {
      double xi = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = xi;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        const double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
        const double step = p1 / dp;
        xi -= step;
        if (std::fabs(step) < 1e-15) break;
      }
      double p0 = 1.0, p1 = xi;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
      x[n - 1 - i] = xi;
      w[n - 1 - i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
  }
};
const GL24 kGL;

// M_k = int_0^{j_k} x J_1(x) dx, accumulated interval by interval
std::vector<double> j1_moments(const std::vector<double>& jz, int count) {
  std::vector<double> m(count);
  double acc = 0.0;
  double a = 0.0;
  for (int k = 0; k < count; ++k) {
    const double b = jz[k];
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (b + a);
    double s = 0.0;
    for (int q = 0; q < 24; ++q) {
      const double xv = c + h * kGL.x[q];
      s += kGL.w[q] * xv * special::bessel_j(1, xv);
    }
    acc += h * s;
    m[k] = acc;
    a = b;
  }
  return m;
}

// threaded upper-triangle fill of the symmetric kernel J_nu(j_i j_k / S)
std::vector<double> fill_kernel(int nu, const std::vector<double>& jz,
                                std::size_t n, double S) {
  std::vector<double> kernel(n * n);
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned nthreads = std::min<unsigned>(hw, 8);
  std::mutex next_mutex;
  std::size_t next = 0;
  const std::size_t block = 64;
  auto worker = [&] {
    for (;;) {
      std::size_t lo;
      {
        std::lock_guard<std::mutex> lk(next_mutex);
        lo = next;
        next += block;
      }
      if (lo >= n) return;
      const std::size_t hi = std::min(n, lo + block);
      for (std::size_t k = lo; k < hi; ++k)
        for (std::size_t i = k; i < n; ++i)
          kernel[k * n + i] = special::bessel_j(nu, jz[i] * jz[k] / S);
    }
  };
  if (nthreads <= 1 || n < 256) {
    worker();
  } else {
    std::vector<std::thread> ts;
    for (unsigned t = 0; t < nthreads; ++t) ts.emplace_back(worker);
    for (auto& t : ts) t.join();
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < k; ++i) kernel[k * n + i] = kernel[i * n + k];
  return kernel;
}

GridPtr make_bessel(int dim, double cutoff, int n_nodes) {
  if (dim != 2 && dim != 4)
    throw std::domain_error("RadialGrid: dim must be 2 or 4");
  if (!(cutoff > 0.0) || n_nodes < 8)
    throw std::domain_error("RadialGrid: bad cutoff or node count");
  auto g = std::make_shared<RadialGrid>();
  g->dim = dim;
  g->cutoff = cutoff;
  g->kind = GridKind::bessel;
  const int nu = dim / 2 - 1;
  g->jzeros = special::bessel_zeros(nu, n_nodes + 1);
  g->big_s = g->jzeros[n_nodes];
  const double S = g->big_s;
  const double R = cutoff;

  g->nodes.resize(n_nodes);
  g->freqs.resize(n_nodes);
  g->w_rdr.resize(n_nodes);
  g->wf_rdr.resize(n_nodes);
  for (int i = 0; i < n_nodes; ++i) {
    const double j = g->jzeros[i];
    g->nodes[i] = j * R / S;
    g->freqs[i] = j / R;
    const double jn1 = special::bessel_j(nu + 1, j);
    g->w_rdr[i] = 2.0 * R * R / (S * S * jn1 * jn1);
    g->wf_rdr[i] = 2.0 / (R * R * jn1 * jn1);
  }

  const int nu_ord = dim / 2 - 1;
  g->kernel = fill_kernel(nu_ord, g->jzeros, n_nodes, S);

  g->weights.resize(n_nodes);
  g->wf_full.resize(n_nodes);
  if (dim == 2) {
    g->weights = g->w_rdr;
    g->wf_full = g->wf_rdr;
  } else {
    // int F r^3 dr = int (F r^2) r dr with F r^2 expanded in the J_1 Dini
    // series; quadrature of the series term-by-term gives
    //   v_i = w_rdr_i * sum_k [2 M_k / (j_k^2 J_2(j_k)^2)] J_1(j_i j_k / S)
    const auto M = j1_moments(g->jzeros, n_nodes);
    std::vector<double> coef(n_nodes);
    for (int k = 0; k < n_nodes; ++k) {
      const double j = g->jzeros[k];
      const double j2 = special::bessel_j(2, j);
      coef[k] = 2.0 * M[k] / (j * j * j2 * j2);
    }
    for (int i = 0; i < n_nodes; ++i) {
      const double s = kernels::dot(g->kernel.data() + i * n_nodes,
                                    coef.data(), n_nodes);
      const double ri = g->nodes[i];
      g->weights[i] = g->w_rdr[i] * s * ri * ri;
      const double rhoi = g->freqs[i];
      g->wf_full[i] = g->wf_rdr[i] * s * rhoi * rhoi;
    }
  }
  return g;
}

GridPtr make_uniform(int dim, double cutoff, int n_nodes) {
  if (dim != 2 && dim != 4)
    throw std::domain_error("RadialGrid: dim must be 2 or 4");
  auto g = std::make_shared<RadialGrid>();
  g->dim = dim;
  g->cutoff = cutoff;
  g->kind = GridKind::uniform_cell;
  const double dr = cutoff / n_nodes;
  g->nodes.resize(n_nodes);
  g->weights.resize(n_nodes);
  for (int i = 0; i < n_nodes; ++i) {
    const double r = (i + 0.5) * dr;
    g->nodes[i] = r;
    g->weights[i] = dr * std::pow(r, dim - 1);
  }
  return g;
}

}  // namespace

double RadialGrid::spacing() const {
  if (kind == GridKind::uniform_cell) return cutoff / static_cast<double>(size());
  return cutoff / static_cast<double>(size());  // mean gap ~ pi R / S
}

GridPtr RadialGrid::bessel(int dim, double cutoff, int n_nodes) {
  const auto key = std::make_tuple(dim, cutoff, n_nodes, 0);
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = g_cache.find(key);
    if (it != g_cache.end()) return it->second;
  }
  auto g = make_bessel(dim, cutoff, n_nodes);
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  return g_cache.emplace(key, std::move(g)).first->second;
}

GridPtr RadialGrid::uniform(int dim, double cutoff, int n_nodes) {
  const auto key = std::make_tuple(dim, cutoff, n_nodes, 1);
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = g_cache.find(key);
    if (it != g_cache.end()) return it->second;
  }
  auto g = make_uniform(dim, cutoff, n_nodes);
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  return g_cache.emplace(key, std::move(g)).first->second;
}

RadialProfile resample(const RadialProfile& f, const GridPtr& target) {
  const auto& src = f.grid->nodes;
  const auto& val = f.samples;
  const int n = static_cast<int>(src.size());
  RadialProfile out(target);
  for (std::size_t m = 0; m < target->nodes.size(); ++m) {
    const double r = target->nodes[m];
    if (r > f.grid->cutoff) {
      out.samples[m] = 0.0;  // implicit zero extension
      continue;
    }
    // bracketing index
    int hi = static_cast<int>(std::lower_bound(src.begin(), src.end(), r) -
                              src.begin());
    int lo = std::clamp(hi - 3, 0, n - 6);
    // 6-point Lagrange through src[lo..lo+5]
    double s = 0.0;
    for (int a = 0; a < 6; ++a) {
      double l = 1.0;
      for (int b = 0; b < 6; ++b) {
        if (a == b) continue;
        l *= (r - src[lo + b]) / (src[lo + a] - src[lo + b]);
      }
      s += l * val[lo + a];
    }
    out.samples[m] = s;
  }
  return out;
}

}  // namespace fadlab::spectral

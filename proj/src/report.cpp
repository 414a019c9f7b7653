#include "fadlab/report.hpp"

#include <algorithm>
#include <cmath>

namespace fadlab {
namespace {

// least-squares slope of log(y) vs log(x) over entries with x, y > 0
double loglog_slope(const std::vector<double>& xs,
                    const std::vector<double>& ys) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  const std::size_t n = std::min(xs.size(), ys.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (xs[i] <= 0.0 || ys[i] <= 0.0) continue;
    const double x = std::log(xs[i]);
    const double y = std::log(ys[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++m;
  }
  if (m < 2) return 0.0;
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace

void RatioReport::finalize() {
  if (ratios.empty()) {
    min = max = median = 0.0;
    return;
  }
  std::vector<double> s(ratios);
  std::sort(s.begin(), s.end());
  min = s.front();
  max = s.back();
  median = s[s.size() / 2];
}

void RatioReport::fit_slope() { slope = loglog_slope(params, ratios); }

void ConvergenceReport::finalize() { order = loglog_slope(resolutions, errors); }

}  // namespace fadlab

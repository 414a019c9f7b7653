#pragma once
// Plain-struct reports produced by the diagnostics and probe layers.
// Serialization to JSON/CSV lives in io.cpp.

#include <string>
#include <vector>

namespace fadlab {

struct EnergyReport {
  double t = 0.0;
  double total = 0.0;
  double kinetic = 0.0;   // (1 + sin^2 u / r^2) u_t^2 / 2 part
  double gradient = 0.0;  // (1 + sin^2 u / r^2) u_r^2 / 2 part
  double potential = 0.0; // sin^2 u / (2 r^2) part
};

enum class ScatterVerdict { decaying, flat, growing };

struct ScatteringReport {
  double fit_time = 0.0;  // pull-back pin time for the free comparison wave
  std::vector<double> times;
  std::vector<double> defects;  // D-norm of (v - v_plus, v_t - v_plus_t)
  double slope = 0.0;           // least-squares d/dt log(defect), last half
  double peak_defect = 0.0;
  double final_defect = 0.0;    // at the last reported time (0.9 * horizon)
  ScatterVerdict verdict = ScatterVerdict::flat;
  std::string warning;          // set when the record is too short to judge
};

struct RatioReport {
  std::string lhs_label;
  std::string rhs_label;
  std::vector<double> params;  // per-sample parameter (lambda, u, delta, ...)
  std::vector<double> ratios;
  int skipped = 0;             // degenerate members (rhs == 0)
  double min = 0.0;
  double max = 0.0;
  double median = 0.0;
  double slope = 0.0;  // log-log slope vs params where meaningful
  double regression_constant = 0.0;

  void finalize();  // fills min/max/median from ratios
  void fit_slope(); // log-log least squares of ratios vs params
};

struct ConvergenceReport {
  std::string label;
  std::vector<double> resolutions;  // grid spacing per run
  std::vector<double> errors;      // max residual per run
  double order = 0.0;              // least-squares slope in log-log
  void finalize();
};

struct SurrogateBandReport {
  double lambda = 0.0;
  double x_half = 0.0;
  double y = 0.0;
  double f_surrogate = 0.0;
  double mu0 = 0.0;  // chosen split threshold
};

struct SurrogateNormReport {
  std::vector<SurrogateBandReport> bands;
  double f = 0.0;       // sum lambda^2   * F_lambda  (n = 4)
  double grad_f = 0.0;  // sum lambda^1   * F_lambda
  double x = 0.0;       // f + grad_f
  double taper_fraction = 0.0;  // window taper mass / field mass
};

}  // namespace fadlab

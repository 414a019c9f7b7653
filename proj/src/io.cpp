#include "fadlab/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace fadlab::io {
namespace {

const char* verdict_name(ScatterVerdict v) {
  switch (v) {
    case ScatterVerdict::decaying: return "DECAYING";
    case ScatterVerdict::flat: return "FLAT";
    case ScatterVerdict::growing: return "GROWING";
  }
  return "FLAT";
}

json vec_json(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string config_hash(const json& config) {
  const std::string s = config.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

json to_json(const EnergyReport& r) {
  return json{{"t", r.t},
              {"total", r.total},
              {"kinetic", r.kinetic},
              {"gradient", r.gradient},
              {"potential", r.potential}};
}

json to_json(const RatioReport& r) {
  return json{{"lhs", r.lhs_label},
              {"rhs", r.rhs_label},
              {"params", vec_json(r.params)},
              {"ratios", vec_json(r.ratios)},
              {"skipped", r.skipped},
              {"min", r.min},
              {"max", r.max},
              {"median", r.median},
              {"slope", r.slope},
              {"regression_constant", r.regression_constant}};
}

json to_json(const ScatteringReport& r) {
  json j{{"fit_time", r.fit_time},
         {"times", vec_json(r.times)},
         {"defects", vec_json(r.defects)},
         {"slope", r.slope},
         {"peak_defect", r.peak_defect},
         {"final_defect", r.final_defect},
         {"verdict", verdict_name(r.verdict)}};
  if (!r.warning.empty()) j["warning"] = r.warning;
  return j;
}

json to_json(const ConvergenceReport& r) {
  return json{{"label", r.label},
              {"resolutions", vec_json(r.resolutions)},
              {"errors", vec_json(r.errors)},
              {"order", r.order}};
}

json to_json(const SurrogateNormReport& r) {
  json bands = json::array();
  for (const auto& b : r.bands)
    bands.push_back(json{{"lambda", b.lambda},
                         {"x_half", b.x_half},
                         {"y", b.y},
                         {"f_surrogate", b.f_surrogate},
                         {"mu0", b.mu0}});
  return json{{"bands", bands},
              {"f", r.f},
              {"grad_f", r.grad_f},
              {"x", r.x},
              {"taper_fraction", r.taper_fraction}};
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << j.dump(2) << "\n";
}

void write_profile_csv(const std::filesystem::path& path,
                       const spectral::RadialProfile& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << "r,f\n";
  for (std::size_t i = 0; i < f.size(); ++i)
    out << format_double(f.grid->nodes[i]) << ","
        << format_double(f.samples[i]) << "\n";
}

spectral::RadialProfile read_profile_csv(const std::filesystem::path& path,
                                         const spectral::GridPtr& grid) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  std::getline(in, line);  // header
  spectral::RadialProfile f(grid);
  std::size_t i = 0;
  while (std::getline(in, line) && i < grid->size()) {
    const auto comma = line.find(',');
    if (comma == std::string::npos) continue;
    f.samples[i++] = std::stod(line.substr(comma + 1));
  }
  if (i != grid->size())
    throw std::runtime_error("profile row count does not match grid");
  return f;
}

void write_timeseries_csv(const std::filesystem::path& path,
                          const std::vector<std::string>& columns,
                          const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  for (std::size_t c = 0; c < columns.size(); ++c)
    out << columns[c] << (c + 1 < columns.size() ? "," : "\n");
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      out << format_double(row[c]) << (c + 1 < row.size() ? "," : "\n");
  }
}

void write_trajectory(const std::filesystem::path& dir,
                      const evol::Trajectory& traj, const json& config_echo,
                      const std::string& hash) {
  std::filesystem::create_directories(dir);
  json manifest;
  manifest["schema"] = "fadlab.trajectory.v1";
  manifest["config"] = config_echo;
  manifest["config_hash"] = hash;
  manifest["status"] = traj.status == evol::TrajectoryStatus::completed
                           ? "COMPLETED"
                           : traj.status == evol::TrajectoryStatus::blowup_detected
                                 ? "BLOWUP_DETECTED"
                                 : "CFL_VIOLATION";
  json snaps = json::array();
  int idx = 0;
  for (const auto& s : traj.snapshots) {
    char name[48];
    std::snprintf(name, sizeof name, "snapshot_%05d.csv", idx);
    std::ofstream out(dir / name);
    out << "r,f,f_t\n";
    for (std::size_t i = 0; i < s.f.size(); ++i)
      out << format_double(s.f.grid->nodes[i]) << ","
          << format_double(s.f.samples[i]) << ","
          << format_double(s.f_t.samples[i]) << "\n";
    snaps.push_back(json{{"t", s.t}, {"file", name}});
    ++idx;
  }
  manifest["snapshots"] = snaps;
  write_json(dir / "trajectory.json", manifest);
}

void emit_plot(const std::filesystem::path& stem, const std::vector<double>& x,
               const std::vector<double>& y, const std::string& xlabel,
               const std::string& ylabel, bool loglog) {
  const auto dat = stem.string() + ".dat";
  const auto gp = stem.string() + ".gp";
  {
    std::ofstream out(dat);
    if (!out) throw std::runtime_error("cannot open " + dat);
    // fitted log-log slope goes into the header for quick reading
    double slope = 0.0;
    if (loglog) {
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      int m = 0;
      for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (x[i] <= 0 || y[i] <= 0) continue;
        const double a = std::log(x[i]), b = std::log(y[i]);
        sx += a; sy += b; sxx += a * a; sxy += a * b;
        ++m;
      }
      if (m >= 2) slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    }
    out << "# " << xlabel << " " << ylabel;
    if (loglog) out << "  (loglog slope " << format_double(slope) << ")";
    out << "\n";
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
      out << format_double(x[i]) << " " << format_double(y[i]) << "\n";
  }
  {
    std::ofstream out(gp);
    out << "set xlabel '" << xlabel << "'\nset ylabel '" << ylabel << "'\n";
    if (loglog) out << "set logscale xy\n";
    out << "plot '" << std::filesystem::path(dat).filename().string()
        << "' using 1:2 with linespoints notitle\n";
  }
}

}  // namespace fadlab::io

#pragma once
// Report/CSV serialization and the experiment manifest. All numeric output
// goes through a fixed %.17g formatting so identical runs produce
// byte-identical files.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "fadlab/evolution.hpp"
#include "fadlab/report.hpp"

namespace fadlab::io {

using json = nlohmann::json;

// FNV-1a of the canonicalized config text; names every output file's origin
std::string config_hash(const json& config);

json to_json(const EnergyReport& r);
json to_json(const RatioReport& r);
json to_json(const ScatteringReport& r);
json to_json(const ConvergenceReport& r);
json to_json(const SurrogateNormReport& r);

// deterministic double formatting used across all writers
std::string format_double(double v);
void write_json(const std::filesystem::path& path, const json& j);

// CSV writers (schemas documented in the README)
void write_profile_csv(const std::filesystem::path& path,
                       const spectral::RadialProfile& f);
spectral::RadialProfile read_profile_csv(const std::filesystem::path& path,
                                         const spectral::GridPtr& grid);
void write_timeseries_csv(const std::filesystem::path& path,
                          const std::vector<std::string>& columns,
                          const std::vector<std::vector<double>>& rows);
// trajectory directory: snapshot CSVs plus a JSON manifest with config echo,
// status and per-snapshot files
void write_trajectory(const std::filesystem::path& dir,
                      const evol::Trajectory& traj, const json& config_echo,
                      const std::string& hash);

// gnuplot emission: two-column .dat plus a driver .gp with the fitted slope
// in a header comment when params are positive
void emit_plot(const std::filesystem::path& stem,
               const std::vector<double>& x, const std::vector<double>& y,
               const std::string& xlabel, const std::string& ylabel,
               bool loglog);

}  // namespace fadlab::io

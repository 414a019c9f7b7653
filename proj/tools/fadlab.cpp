// fadlab: experiment runner for the equivariant Faddeev laboratory.
//
// Subcommands: simulate, norms, verify, scatter, probe, hnorm, sweep.
// Every run takes an explicit JSON config (no defaults for physical
// parameters), writes a manifest naming the config hash, report JSONs, CSV
// time series, and gnuplot-ready plot data. Identical config + seed produce
// byte-identical reports; wall-clock timings go to a separate timings.json
// that is excluded from that guarantee.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>

#include "fadlab/besov.hpp"
#include "fadlab/diagnostics.hpp"
#include "fadlab/evolution.hpp"
#include "fadlab/io.hpp"
#include "fadlab/kernels.hpp"
#include "fadlab/probes.hpp"
#include "fadlab/spacetime.hpp"

namespace fs = std::filesystem;
using fadlab::io::json;
using namespace fadlab;

namespace {

constexpr const char* kVersion = "fadlab 1.0.0";

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const json& require(const json& j, const std::string& key) {
  if (!j.contains(key))
    throw ConfigError("config field missing: " + key);
  return j.at(key);
}

double require_num(const json& j, const std::string& key) {
  const json& v = require(j, key);
  if (!v.is_number()) throw ConfigError("config field not numeric: " + key);
  return v.get<double>();
}

struct RunContext {
  fs::path out;
  json config;
  std::string hash;
  std::uint64_t seed = 2026;
  int threads = 1;
  json timings = json::object();
  bool partial = false;
  std::vector<std::string> artifacts;

  void note_artifact(const std::string& name) { artifacts.push_back(name); }

  void write_manifest(const std::string& subcommand) {
    json m;
    m["schema"] = "fadlab.manifest.v1";
    m["tool"] = kVersion;
    m["subcommand"] = subcommand;
    m["config"] = config;
    m["config_hash"] = hash;
    m["seed"] = seed;
    m["artifacts"] = artifacts;
    if (partial) m["partial"] = true;
    io::write_json(out / "manifest.json", m);
    io::write_json(out / "timings.json",
                   json{{"note", "wall-clock seconds; excluded from the "
                                 "byte-identical reproducibility guarantee"},
                        {"timings", timings}});
  }
};

class Timer {
 public:
  explicit Timer(RunContext& ctx, std::string name)
      : ctx_(ctx), name_(std::move(name)),
        start_(std::chrono::steady_clock::now()) {}
  ~Timer() {
    const double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start_)
            .count();
    ctx_.timings[name_] = s;
  }

 private:
  RunContext& ctx_;
  std::string name_;
  std::chrono::steady_clock::time_point start_;
};

spectral::GridPtr grid_from(const json& j, spectral::GridKind kind) {
  const int dim = static_cast<int>(require_num(j, "dim"));
  const double cutoff = require_num(j, "cutoff");
  const int nodes = static_cast<int>(require_num(j, "nodes"));
  if (dim != 2 && dim != 4) throw ConfigError("grid.dim must be 2 or 4");
  if (cutoff <= 0 || nodes < 8) throw ConfigError("bad grid.cutoff/nodes");
  return kind == spectral::GridKind::bessel
             ? spectral::RadialGrid::bessel(dim, cutoff, nodes)
             : spectral::RadialGrid::uniform(dim, cutoff, nodes);
}

spectral::DyadicPartition bands_from(const json& cfg) {
  if (!cfg.contains("bands")) return spectral::DyadicPartition::standard();
  const json& b = cfg.at("bands");
  return spectral::DyadicPartition(
      static_cast<int>(require_num(b, "emin")),
      static_cast<int>(require_num(b, "emax")));
}

evol::SolverConfig solver_from(const json& cfg) {
  const json& g = require(cfg, "grid");
  const json& s = require(cfg, "solver");
  evol::SolverConfig sc;
  sc.n_nodes = static_cast<int>(require_num(g, "nodes"));
  sc.cutoff = require_num(g, "cutoff");
  sc.horizon = require_num(s, "horizon");
  sc.cfl = require_num(s, "cfl");
  if (s.contains("scheme")) {
    const std::string name = s.at("scheme").get<std::string>();
    if (name == "rk4") sc.scheme = evol::Scheme::rk4;
    else if (name == "leapfrog") sc.scheme = evol::Scheme::leapfrog;
    else throw ConfigError("solver.scheme must be rk4 or leapfrog");
  }
  if (s.contains("spatial_order"))
    sc.spatial_order = s.at("spatial_order").get<int>();
  if (s.contains("snapshot_stride"))
    sc.snapshot_stride = s.at("snapshot_stride").get<int>();
  if (s.contains("sponge")) sc.sponge = s.at("sponge").get<bool>();
  if (s.contains("nonlinear")) sc.nonlinear = s.at("nonlinear").get<bool>();
  return sc;
}

evol::FieldState data_from(const json& cfg, const spectral::GridPtr& grid) {
  const json& d = require(cfg, "data");
  const std::string fam = require(d, "family").get<std::string>();
  const double delta = require_num(d, "delta");
  evol::DataFamily family;
  if (fam == "gauss_bump") family = evol::DataFamily::gauss_bump;
  else if (fam == "poly_bump") family = evol::DataFamily::poly_bump;
  else if (fam == "two_bump") family = evol::DataFamily::two_bump;
  else throw ConfigError("data.family must be gauss_bump|poly_bump|two_bump");
  const std::string form = require(d, "form").get<std::string>();
  if (form != "u_form" && form != "v_form")
    throw ConfigError("data.form must be u_form or v_form");
  evol::DataParams params;
  if (d.contains("width")) params.width = d.at("width").get<double>();
  if (d.contains("outgoing")) params.outgoing = d.at("outgoing").get<bool>();
  return evol::initial_data(family, delta, grid,
                            form == "u_form" ? evol::FieldForm::u_form
                                             : evol::FieldForm::v_form,
                            params);
}

const char* status_name(evol::TrajectoryStatus s) {
  switch (s) {
    case evol::TrajectoryStatus::completed: return "COMPLETED";
    case evol::TrajectoryStatus::blowup_detected: return "BLOWUP_DETECTED";
    case evol::TrajectoryStatus::cfl_violation: return "CFL_VIOLATION";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// simulate: evolve one trajectory, record energy/bound time series
// ---------------------------------------------------------------------------
int run_simulate(RunContext& ctx) {
  const auto grid =
      grid_from(require(ctx.config, "grid"), spectral::GridKind::uniform_cell);
  const auto sc = solver_from(ctx.config);
  const auto init = data_from(ctx.config, grid);

  evol::Trajectory traj;
  {
    Timer t(ctx, "evolve");
    traj = evol::evolve(init, sc);
  }
  io::write_trajectory(ctx.out / "trajectory", traj, ctx.config, ctx.hash);
  ctx.note_artifact("trajectory/trajectory.json");

  std::vector<std::vector<double>> rows;
  const bool uform = init.form == evol::FieldForm::u_form;
  for (const auto& s : traj.snapshots) {
    const double mx = kernels::max_abs(s.f.samples.data(), s.f.size());
    if (uform) {
      const auto e = diag::energy(s);
      rows.push_back({s.t, e.total, mx});
    } else {
      rows.push_back({s.t, 0.0, mx});
    }
  }
  io::write_timeseries_csv(ctx.out / "timeseries.csv", {"t", "E", "max_abs_f"},
                           rows);
  ctx.note_artifact("timeseries.csv");

  std::vector<double> ts, es;
  for (const auto& r : rows) {
    ts.push_back(r[0]);
    es.push_back(r[1]);
  }
  if (uform) io::emit_plot(ctx.out / "energy_vs_t", ts, es, "t", "E", false);

  json rep;
  rep["status"] = status_name(traj.status);
  rep["snapshots"] = traj.snapshots.size();
  if (uform && !traj.snapshots.empty()) {
    const double e0 = diag::energy(traj.snapshots.front()).total;
    double drift = 0.0;
    for (const auto& r : rows)
      if (e0 > 0.0) drift = std::max(drift, std::fabs(r[1] - e0) / e0);
    rep["energy_initial"] = e0;
    rep["energy_drift"] = drift;
    const auto pb = diag::pointwise_bound_check(traj.snapshots.back());
    rep["max_abs_u"] = pb.max_abs_u;
    rep["implied_bound"] = pb.implied_bound;
  }
  io::write_json(ctx.out / "simulate_report.json", rep);
  ctx.note_artifact("simulate_report.json");
  return traj.status == evol::TrajectoryStatus::completed ? 0 : 3;
}

// ---------------------------------------------------------------------------
// norms: Besov/Lp norms of a configured profile
// ---------------------------------------------------------------------------
int run_norms(RunContext& ctx) {
  const auto grid =
      grid_from(require(ctx.config, "grid"), spectral::GridKind::bessel);
  const auto part = bands_from(ctx.config);
  const json& p = require(ctx.config, "profile");

  spectral::RadialProfile f(grid);
  if (p.contains("csv")) {
    f = io::read_profile_csv(p.at("csv").get<std::string>(), grid);
  } else {
    const std::string kind = require(p, "kind").get<std::string>();
    const double w = require_num(p, "width");
    const double a = require_num(p, "amplitude");
    if (kind == "gauss")
      f = spectral::RadialProfile(
          grid, [&](double r) { return a * std::exp(-r * r / (w * w)); });
    else if (kind == "r_gauss")
      f = spectral::RadialProfile(grid, [&](double r) {
        return a * r * std::exp(-r * r / (w * w));
      });
    else
      throw ConfigError("profile.kind must be gauss or r_gauss");
  }
  io::write_profile_csv(ctx.out / "profile.csv", f);
  ctx.note_artifact("profile.csv");

  json rep;
  rep["lp"] = json::object();
  for (double q : {1.0, 2.0, 4.0, 6.0})
    rep["lp"][io::format_double(q)] = spectral::lp_norm(f, q);
  rep["linf"] = spectral::lp_norm(f, std::numeric_limits<double>::infinity());
  rep["besov"] = json::array();
  for (const json& sj : require(ctx.config, "specs")) {
    spectral::BesovSpec spec;
    spec.s = require_num(sj, "s");
    spec.p = require_num(sj, "p");
    spec.n = grid->dim;
    const auto r = spectral::besov_norm(f, spec, part);
    rep["besov"].push_back(json{{"s", spec.s},
                                {"p", spec.p},
                                {"value", r.value},
                                {"tail", r.tail}});
  }
  io::write_json(ctx.out / "norms_report.json", rep);
  ctx.note_artifact("norms_report.json");
  return 0;
}

// ---------------------------------------------------------------------------
// verify: convergence/identity checks with manufactured fields
// ---------------------------------------------------------------------------
int run_verify(RunContext& ctx) {
  json rep = json::array();
  const json& checks = require(ctx.config, "checks");
  Timer t(ctx, "verify");
  for (const json& cj : checks) {
    const std::string name = require(cj, "name").get<std::string>();
    if (name == "nullform") {
      std::vector<int> res;
      for (const json& r : require(cj, "resolutions"))
        res.push_back(r.get<int>());
      const auto field = diag::r_gauss_cos_field(1.0, 1.0, 1.0);
      auto c = diag::nullform_residual(field, require_num(cj, "tmax"),
                                       require_num(cj, "rmax"), res);
      c.label = "nullform r_gauss_cos";
      rep.push_back(io::to_json(c));
    } else if (name == "scaling") {
      const auto field = diag::r_gauss_cos_field(0.8, 1.0, 1.2);
      json per = json::array();
      for (const json& lj : require(cj, "lambdas")) {
        const double lam = lj.get<double>();
        per.push_back(json{
            {"lambda", lam},
            {"residual", diag::scaling_covariance_residual(
                             field, lam, 2.0, 6.0, 24)}});
      }
      rep.push_back(json{{"label", "scaling covariance"}, {"cases", per}});
    } else {
      throw ConfigError("unknown verify check: " + name);
    }
  }
  io::write_json(ctx.out / "verify_report.json", rep);
  ctx.note_artifact("verify_report.json");
  return 0;
}

// ---------------------------------------------------------------------------
// scatter: v-form trajectory + scattering fit
// ---------------------------------------------------------------------------
int run_scatter(RunContext& ctx) {
  const auto grid =
      grid_from(require(ctx.config, "grid"), spectral::GridKind::uniform_cell);
  if (grid->dim != 4) throw ConfigError("scatter runs on dim = 4 grids");
  const auto sc = solver_from(ctx.config);
  auto init = data_from(ctx.config, grid);
  if (init.form != evol::FieldForm::v_form)
    throw ConfigError("scatter needs v_form data");

  const json& bg = require(ctx.config, "bessel_grid");
  const auto grid4 = spectral::RadialGrid::bessel(
      4, require_num(bg, "cutoff"), static_cast<int>(require_num(bg, "nodes")));
  const auto part = bands_from(ctx.config);

  evol::Trajectory traj;
  {
    Timer t(ctx, "evolve");
    traj = evol::evolve(init, sc);
  }
  if (traj.status != evol::TrajectoryStatus::completed) {
    json rep;
    rep["status"] = status_name(traj.status);
    io::write_json(ctx.out / "scattering_report.json", rep);
    ctx.partial = true;
    ctx.note_artifact("scattering_report.json");
    return 3;
  }
  ScatteringReport srep;
  {
    Timer t(ctx, "scattering_fit");
    srep = diag::scattering_fit(traj, grid4, part);
  }
  io::write_json(ctx.out / "scattering_report.json", io::to_json(srep));
  ctx.note_artifact("scattering_report.json");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < srep.times.size(); ++i)
    rows.push_back({srep.times[i], srep.defects[i]});
  io::write_timeseries_csv(ctx.out / "defect.csv", {"t", "defect"}, rows);
  io::emit_plot(ctx.out / "defect_vs_t", srep.times, srep.defects, "t",
                "defect", false);
  ctx.note_artifact("defect.csv");
  return 0;
}

// ---------------------------------------------------------------------------
// probe: profile-family inequality probes
// ---------------------------------------------------------------------------
int run_probe(RunContext& ctx) {
  probes::ProbeContext pc;
  pc.grid4 =
      grid_from(require(ctx.config, "grid"), spectral::GridKind::bessel);
  if (ctx.config.contains("wide_grid"))
    pc.grid4_wide =
        grid_from(ctx.config.at("wide_grid"), spectral::GridKind::bessel);
  pc.part = bands_from(ctx.config);
  pc.seed = ctx.seed;
  if (ctx.config.contains("family_size"))
    pc.family_size = ctx.config.at("family_size").get<int>();

  // NONLIN probes need trajectories; build them from the config block
  std::vector<evol::Trajectory> trajs;
  if (ctx.config.contains("trajectories")) {
    const json& tj = ctx.config.at("trajectories");
    const auto ugrid =
        grid_from(require(tj, "grid"), spectral::GridKind::uniform_cell);
    Timer t(ctx, "trajectories");
    for (const json& dj : require(tj, "deltas")) {
      json one = tj;
      one["data"] = require(tj, "data");
      one["data"]["delta"] = dj.get<double>();
      const auto sc = solver_from(one);
      const auto init = data_from(one, ugrid);
      trajs.push_back(evol::evolve(init, sc));
    }
    pc.trajectories = trajs;
  }

  json rep = json::object();
  Timer t(ctx, "probes");
  for (const json& pj : require(ctx.config, "probes")) {
    const std::string name = pj.get<std::string>();
    if (name == "transition") {
      // norm-transition family between the R^2 and R^4 pictures
      auto grid2 = spectral::RadialGrid::bessel(2, pc.grid4->cutoff,
                                                static_cast<int>(pc.grid4->size()));
      const auto r = probes::norm_transition_probe(
          grid2, pc.grid4, {1.0, 2.0, 1.0, 2}, pc.part, pc.family_size,
          pc.seed);
      rep[name] = io::to_json(r);
      continue;
    }
    probes::Inequality which;
    if (name == "nonlin") which = probes::Inequality::nonlin;
    else if (name == "prod") which = probes::Inequality::prod;
    else if (name == "algebra_y") which = probes::Inequality::algebra_y;
    else if (name == "r_weight") which = probes::Inequality::r_weight;
    else if (name == "sin_power") which = probes::Inequality::sin_power;
    else if (name == "sob") which = probes::Inequality::sob;
    else if (name == "rad_sob") which = probes::Inequality::rad_sob;
    else throw ConfigError("unknown probe: " + name);
    const auto r = probes::inequality_probe(which, pc);
    rep[name] = io::to_json(r);
    if (!r.params.empty())
      io::emit_plot(ctx.out / ("ratio_" + name), r.params, r.ratios, "param",
                    "ratio", which == probes::Inequality::rad_sob);
  }
  io::write_json(ctx.out / "probe_report.json", rep);
  ctx.note_artifact("probe_report.json");
  return 0;
}

// ---------------------------------------------------------------------------
// hnorm: spacetime surrogate norms and the hyperbolic-space probes
// ---------------------------------------------------------------------------
int run_hnorm(RunContext& ctx) {
  const json& wj = require(ctx.config, "window");
  st::TimeWindow win;
  win.t0 = -require_num(wj, "half_span");
  win.t1 = require_num(wj, "half_span");
  win.nt = static_cast<int>(require_num(wj, "nt"));
  if (wj.contains("taper")) win.taper_frac = wj.at("taper").get<double>();
  const auto grid =
      grid_from(require(ctx.config, "grid"), spectral::GridKind::bessel);
  const auto part = bands_from(ctx.config);

  json rep = json::object();
  Timer t(ctx, "hnorm");
  for (const json& pj : require(ctx.config, "probes")) {
    const std::string name = require(pj, "name").get<std::string>();
    if (name == "packet_norms") {
      const double lam = require_num(pj, "lambda");
      const double mu = require_num(pj, "mu");
      auto w = st::synthesize_packet(win, grid, [&](double tau, double rho) {
        const double mag = std::hypot(tau, rho);
        if (mag == 0.0) return 0.0;
        const double m = std::fabs(tau * tau - rho * rho) / mag;
        return spectral::chi_cut(mag / lam) * spectral::theta_cut(m / mu);
      });
      rep[name] = io::to_json(st::composite_x_norm(w, part));
    } else if (name == "strichartz") {
      std::vector<double> lams;
      for (const json& lj : require(pj, "lambdas"))
        lams.push_back(lj.get<double>());
      const auto r = probes::strichartz_probe(
          require_num(pj, "q"), require_num(pj, "r"),
          pj.contains("rv") && pj.at("rv").get<bool>(), win, grid, lams, part);
      rep["strichartz"] = io::to_json(r);
      io::emit_plot(ctx.out / "ratio_strichartz", r.params, r.ratios,
                    "lambda", "ratio", true);
    } else if (name == "trilinear") {
      probes::TrilinearOptions opt;
      opt.seed = ctx.seed;
      if (pj.contains("trials")) opt.trials = pj.at("trials").get<int>();
      if (pj.contains("max_sep_log2"))
        opt.max_sep_log2 = pj.at("max_sep_log2").get<int>();
      const auto r = probes::trilinear_probe(win, grid, part, opt);
      rep["trilinear"] = io::to_json(r);
      io::emit_plot(ctx.out / "ratio_trilinear", r.params, r.ratios,
                    "separation", "ratio", true);
    } else if (name == "sin_composition") {
      const auto r = probes::sin_composition_probe(
          require_num(pj, "alpha"), win, grid, part,
          pj.contains("trials") ? pj.at("trials").get<int>() : 8, ctx.seed);
      rep["sin_composition"] = io::to_json(r);
    } else if (name == "bilinear") {
      // exploratory: reported, never asserted
      const auto r = probes::bilinear_probe(
          win, grid, part,
          pj.contains("trials") ? pj.at("trials").get<int>() : 16, ctx.seed);
      rep["bilinear"] = io::to_json(r);
    } else {
      throw ConfigError("unknown hnorm probe: " + name);
    }
  }
  io::write_json(ctx.out / "hnorm_report.json", rep);
  ctx.note_artifact("hnorm_report.json");
  return 0;
}

// ---------------------------------------------------------------------------
// sweep: delta grid of simulate + verify + scatter, aggregated summary
// ---------------------------------------------------------------------------
int run_sweep(RunContext& ctx) {
  const json& base = require(ctx.config, "run");
  std::vector<double> deltas;
  for (const json& dj : require(ctx.config, "deltas"))
    deltas.push_back(dj.get<double>());

  const auto ugrid =
      grid_from(require(base, "grid"), spectral::GridKind::uniform_cell);
  const json& bg = require(base, "bessel_grid");
  const auto grid4 = spectral::RadialGrid::bessel(
      4, require_num(bg, "cutoff"), static_cast<int>(require_num(bg, "nodes")));
  const auto part = bands_from(base);

  struct Row {
    double delta = 0;
    std::string status;
    double e0 = 0, max_u = 0, bound = 0, peak = 0, final_d = 0;
    std::string verdict;
  };

  auto one = [&](double delta) -> Row {
    json cfg = base;
    cfg["data"] = require(base, "data");
    cfg["data"]["delta"] = delta;
    // u-form twin for energy/bound diagnostics
    json ucfg = cfg;
    ucfg["data"]["form"] = "u_form";
    const json& ugridj = require(base, "grid");
    auto u2grid = spectral::RadialGrid::uniform(
        2, require_num(ugridj, "cutoff"),
        static_cast<int>(require_num(ugridj, "nodes")));
    const auto uinit = data_from(ucfg, u2grid);
    const auto usc = solver_from(ucfg);
    auto utraj = evol::evolve(uinit, usc);

    Row row;
    row.delta = delta;
    row.status = status_name(utraj.status);
    if (utraj.status == evol::TrajectoryStatus::completed) {
      row.e0 = diag::energy(utraj.snapshots.front()).total;
      for (const auto& s : utraj.snapshots) {
        const auto pb = diag::pointwise_bound_check(s);
        row.max_u = std::max(row.max_u, pb.max_abs_u);
        row.bound = std::max(row.bound, pb.implied_bound);
      }
    }
    // v-form scattering twin
    const auto vinit = data_from(cfg, ugrid);
    const auto vsc = solver_from(cfg);
    auto vtraj = evol::evolve(vinit, vsc);
    if (vtraj.status == evol::TrajectoryStatus::completed) {
      const auto srep = diag::scattering_fit(vtraj, grid4, part);
      row.peak = srep.peak_defect;
      row.final_d = srep.final_defect;
      row.verdict = srep.verdict == ScatterVerdict::decaying ? "DECAYING"
                    : srep.verdict == ScatterVerdict::growing ? "GROWING"
                                                              : "FLAT";
    } else {
      row.verdict = status_name(vtraj.status);
    }
    return row;
  };

  std::vector<Row> rows(deltas.size());
  {
    Timer t(ctx, "sweep");
    if (ctx.threads > 1) {
      std::vector<std::future<Row>> futs;
      for (double d : deltas)
        futs.push_back(std::async(std::launch::async, one, d));
      for (std::size_t i = 0; i < futs.size(); ++i) rows[i] = futs[i].get();
    } else {
      for (std::size_t i = 0; i < deltas.size(); ++i) rows[i] = one(deltas[i]);
    }
  }

  json summary = json::array();
  std::vector<std::vector<double>> csv;
  for (const auto& r : rows) {
    summary.push_back(json{{"delta", r.delta},
                           {"status", r.status},
                           {"energy", r.e0},
                           {"max_abs_u", r.max_u},
                           {"implied_bound", r.bound},
                           {"peak_defect", r.peak},
                           {"final_defect", r.final_d},
                           {"verdict", r.verdict}});
    csv.push_back({r.delta, r.e0, r.max_u, r.bound, r.peak, r.final_d});
  }
  io::write_json(ctx.out / "sweep_summary.json", summary);
  io::write_timeseries_csv(
      ctx.out / "sweep_summary.csv",
      {"delta", "E0", "max_abs_u", "implied_bound", "peak_defect",
       "final_defect"},
      csv);
  ctx.note_artifact("sweep_summary.json");
  ctx.note_artifact("sweep_summary.csv");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(kVersion) +
               " - equivariant Faddeev model laboratory"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out";
  std::uint64_t seed = 2026;
  int threads = 1;
  app.add_option("--config", config_path, "experiment config (JSON)")
      ->required();
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "rng seed for probe families");
  app.add_option("--threads", threads, "worker threads for sweeps");

  const std::vector<std::string> subs = {"simulate", "norms", "verify",
                                         "scatter", "probe", "hnorm", "sweep"};
  for (const auto& s : subs) app.add_subcommand(s);

  CLI11_PARSE(app, argc, argv);
  const std::string sub = app.get_subcommands().front()->get_name();

  RunContext ctx;
  try {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config: " + config_path);
    ctx.config = json::parse(in);
  } catch (const json::parse_error& e) {
    std::cerr << "config parse error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  ctx.out = out_dir;
  ctx.seed = seed;
  ctx.threads = threads;
  ctx.hash = io::config_hash(ctx.config);
  std::error_code ec;
  fs::create_directories(ctx.out, ec);

  int rc = 0;
  try {
    if (sub == "simulate") rc = run_simulate(ctx);
    else if (sub == "norms") rc = run_norms(ctx);
    else if (sub == "verify") rc = run_verify(ctx);
    else if (sub == "scatter") rc = run_scatter(ctx);
    else if (sub == "probe") rc = run_probe(ctx);
    else if (sub == "hnorm") rc = run_hnorm(ctx);
    else if (sub == "sweep") rc = run_sweep(ctx);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    ctx.partial = true;
    ctx.write_manifest(sub);
    return 3;
  }
  ctx.write_manifest(sub);
  std::cout << sub << ": done, artifacts in " << ctx.out.string()
            << " (config " << ctx.hash << ")\n";
  return rc;
}

#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "driver.hpp"
#include "io.hpp"
#include "schlieren.hpp"
#include "setup.hpp"

namespace pccu {

/// Outcome of one scheme's run as seen by the command line.
struct RunSummary {
  std::string scheme;
  bool ok = true;
  std::string failure;
  std::filesystem::path dir;
  long steps = 0;
  double t_reached = 0.0;
};

struct ExecutionResult {
  std::vector<RunSummary> runs;
  int exit_code() const {
    for (const auto& r : runs)
      if (!r.ok) return 3;
    return 0;
  }
};

inline std::string snapshot_dir_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snapshot_%03zu", index);
  return buf;
}

template <int D>
json integral_json(const State<D>& s) {
  return json(std::vector<double>(s.begin(), s.end()));
}

template <int D>
json snapshot_norms(const Field<D>& a, const Field<D>& b) {
  json comps = json::array();
  const double vol = a.grid().cell_volume();
  for (int c = 0; c < D; ++c) {
    double l1 = 0.0, l2 = 0.0, linf = 0.0;
    a.for_each_interior([&](int j, int k, const State<D>& u) {
      const double d = std::fabs(u[c] - b.at(j, k)[c]);
      l1 += d * vol;
      l2 += d * d * vol;
      linf = std::max(linf, d);
    });
    comps.push_back({{"component", c}, {"l1", l1}, {"l2", std::sqrt(l2)}, {"linf", linf}});
  }
  return comps;
}

template <class Model>
void write_run_outputs(const RunConfig& cfg, const Solver<Model>& solver,
                       const RunReport<Model::ncomp>& report, const std::filesystem::path& dir,
                       const std::string& scheme) {
  const Grid& grid = solver.grid();
  const auto has = [&](const char* f) {
    return std::find(cfg.output.formats.begin(), cfg.output.formats.end(), f) !=
           cfg.output.formats.end();
  };
  json snaps = json::array();
  for (std::size_t i = 0; i < report.snapshots.size(); ++i) {
    const auto& s = report.snapshots[i];
    const std::filesystem::path sdir = dir / snapshot_dir_name(i);
    std::filesystem::create_directories(sdir);
    write_field_csv(sdir / "field.csv", s.field);
    if (grid.dimension == 2) {
      if (has("slice_diag") && grid.nx == grid.ny)
        write_slice_csv(sdir / slice_file_name(SliceKind::diagonal), s.field, SliceKind::diagonal);
      if (has("slice_y0")) write_slice_csv(sdir / slice_file_name(SliceKind::y0), s.field, SliceKind::y0);
      if (has("schlieren") && cfg.model == "multifluid")
        write_pgm16(sdir / "schlieren.pgm", schlieren(s.field, 0), grid.nx, grid.ny);
    }
    snaps.push_back({{"index", i},
                     {"t", s.t},
                     {"dir", snapshot_dir_name(i)},
                     {"integral", integral_json<Model::ncomp>(s.integral)},
                     {"last_good", s.last_good}});
  }

  json effective = to_json(cfg);
  effective["scheme"] = scheme;
  effective["reconstruction"] = to_string(solver.reconstruction());
  json manifest;
  manifest["config"] = effective;
  manifest["grid"] = {{"dimension", grid.dimension}, {"nx", grid.nx}, {"ny", grid.ny},
                      {"dx", grid.dx}, {"dy", grid.dimension == 2 ? grid.dy : 0.0}};
  manifest["snapshots"] = snaps;
  json diag;
  diag["steps"] = report.steps;
  diag["t_reached"] = report.t_reached;
  diag["wall_seconds"] = report.wall_seconds;
  diag["fallbacks"] = report.fallbacks;
  diag["cu_retry_steps"] = report.cu_retry_steps;
  diag["cu_retry_cells"] = report.cu_retry_cells;
  diag["max_pm_defect"] = report.max_pm_defect;
  diag["dt"] = report.dt_history;
  diag["max_speed_x"] = report.speed_x_history;
  if (grid.dimension == 2) diag["max_speed_y"] = report.speed_y_history;
  diag["initial_integral"] = integral_json<Model::ncomp>(report.initial_integral);
  diag["final_integral"] = integral_json<Model::ncomp>(report.final_integral);
  if (report.failure) {
    diag["failure"] = *report.failure;
    const Location& w = report.failure_location;
    json loc = json::object();
    if (w.j) loc["j"] = *w.j;
    if (w.k) loc["k"] = *w.k;
    if (w.t) loc["t"] = *w.t;
    if (w.stage) loc["stage"] = *w.stage;
    diag["failure_location"] = loc;
  }
  manifest["diagnostics"] = diag;
  write_text(dir / "run.json", manifest.dump(2) + "\n");
}

template <class Model>
ExecutionResult execute_model(const Model& model, const RunConfig& cfg, std::ostream& log) {
  constexpr int D = Model::ncomp;
  const Grid grid = make_grid(cfg);
  const Bathymetry bathy = make_bathymetry(cfg.topography, cfg.coriolis);
  const BoundaryCondition bc = make_boundary(model, parse_bc_kind(cfg.bc.left), parse_bc_kind(cfg.bc.right),
                                             parse_bc_kind(cfg.bc.bottom), parse_bc_kind(cfg.bc.top));
  const Field<D> u0 = build_initial_field(model, cfg, grid, bathy);

  RunSettings settings;
  settings.step.cfl = cfg.cfl;
  settings.step.t_final = cfg.t_final;
  settings.snapshot_times = cfg.snapshots;

  ExecutionResult result;
  std::map<std::string, RunReport<D>> reports;
  for (const std::string& scheme : cfg.schemes()) {
    SchemeOptions opts;
    opts.variant = parse_scheme_variant(scheme);
    if (cfg.reconstruction) opts.reconstruction = parse_reconstruction_mode(*cfg.reconstruction);
    opts.slope.theta = cfg.theta;
    opts.eps0 = cfg.eps0;
    const Solver<Model> solver(model, grid, bc, opts, bathy);
    solver.check_admissible(u0);

    log << cfg.name << " [" << scheme << "] " << grid.nx;
    if (grid.dimension == 2) log << "x" << grid.ny;
    log << " cells, t_final=" << cfg.t_final << std::endl;
    RunReport<D> report = run(solver, u0, settings);

    const std::filesystem::path dir = std::filesystem::path(cfg.output.dir) / scheme;
    write_run_outputs(cfg, solver, report, dir, scheme);

    RunSummary s{scheme, report.ok(), report.failure.value_or(""), dir, report.steps, report.t_reached};
    log << "  " << (s.ok ? "done" : "FAILED") << ": " << report.steps << " steps to t=" << report.t_reached
        << " in " << report.wall_seconds << " s";
    if (report.cu_retry_steps > 0) log << ", " << report.cu_retry_steps << " steps redone with local CU";
    if (!s.ok) log << " (" << s.failure << ")";
    log << std::endl;
    result.runs.push_back(s);
    reports.emplace(scheme, std::move(report));
  }

  if (reports.size() == 2) {
    const auto& a = reports.at("pccu");
    const auto& b = reports.at("lcd");
    json cmp = json::array();
    for (const auto& sa : a.snapshots)
      for (const auto& sb : b.snapshots)
        if (sa.t == sb.t && !sa.last_good && !sb.last_good)
          cmp.push_back({{"t", sa.t}, {"norms", snapshot_norms(sa.field, sb.field)}});
    write_text(std::filesystem::path(cfg.output.dir) / "compare.json",
               json({{"pccu_minus_lcd", cmp}}).dump(2) + "\n");
  }
  return result;
}

/// Runs every scheme requested by the config and writes all artifacts.
inline ExecutionResult execute(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  if (cfg.model == "multifluid") {
    if (cfg.dimension == 1) return execute_model(Multifluid1D{}, cfg, log);
    return execute_model(Multifluid2D{}, cfg, log);
  }
  if (cfg.model == "trsw") {
    if (cfg.dimension == 1) return execute_model(Trsw1D{}, cfg, log);
    return execute_model(Trsw2D{}, cfg, log);
  }
  return execute_model(Advection{cfg.advection_speed[0], cfg.advection_speed[1]}, cfg, log);
}

}  // namespace pccu

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "flux.hpp"
#include "global_flux.hpp"
#include "grid.hpp"
#include "models/trsw.hpp"
#include "reconstruct.hpp"
#include "state.hpp"
#include "time_integration.hpp"

namespace pccu {

enum class ReconstructionMode { conservative, equilibrium };

inline const char* to_string(ReconstructionMode m) {
  return m == ReconstructionMode::conservative ? "conservative" : "equilibrium";
}

inline ReconstructionMode parse_reconstruction_mode(const std::string& s) {
  if (s == "conservative") return ReconstructionMode::conservative;
  if (s == "equilibrium") return ReconstructionMode::equilibrium;
  throw ConfigError("unknown reconstruction mode '" + s + "'");
}

inline SchemeVariant parse_scheme_variant(const std::string& s) {
  if (s == "pccu") return SchemeVariant::pccu;
  if (s == "lcd" || s == "lcd_pccu" || s == "lcd-pccu") return SchemeVariant::lcd_pccu;
  throw ConfigError("unknown scheme '" + s + "' (expected pccu or lcd)");
}

template <class Model>
concept HasEquilibriumMap =
    requires(const Model& m, const typename Model::StateT& s, Direction d) {
      { m.to_equilibrium(s, s, d) } -> std::same_as<typename Model::StateT>;
      { m.from_equilibrium(s, s, s, d) } -> std::same_as<typename Model::StateT>;
      { m.from_equilibrium_shared(s, s, s, s, s, d) } -> std::same_as<typename Model::StateT>;
      { m.global_flux_from_equilibrium(s, d) } -> std::same_as<typename Model::StateT>;
    };

template <class Model>
ReconstructionMode default_reconstruction() {
  return HasEquilibriumMap<Model> ? ReconstructionMode::equilibrium
                                  : ReconstructionMode::conservative;
}

struct SchemeOptions {
  SchemeVariant variant = SchemeVariant::lcd_pccu;
  std::optional<ReconstructionMode> reconstruction;  // empty: model default
  SlopeParams slope;
  double eps0 = kDefaultEps0;
  ReconstructionPolicy policy;
  /// LCD only: when a step fails, redo it with CU weights on the faces
  /// around the failing cell (growing the patch on repeated failures).
  bool local_cu_retry = true;
  int max_retries = 6;
};

/// Interior cells whose faces use CU weights in an LCD run, row-major
/// (k * nx + j). Empty means none.
struct CuPatch {
  int nx = 0, ny = 1;
  std::vector<unsigned char> cells;

  bool empty() const { return cells.empty(); }
  bool has(int j, int k) const {
    return !cells.empty() && j >= 0 && j < nx && k >= 0 && k < ny && cells[k * nx + j];
  }
  /// Marks the (2r+1)^2 block around (j, k); returns the number of newly marked cells.
  int mark(int j, int k, int r) {
    if (cells.empty()) cells.assign(static_cast<std::size_t>(nx) * ny, 0);
    int added = 0;
    for (int kk = std::max(0, k - r); kk <= std::min(ny - 1, k + r); ++kk)
      for (int jj = std::max(0, j - r); jj <= std::min(nx - 1, j + r); ++jj)
        if (!cells[kk * nx + jj]) {
          cells[kk * nx + jj] = 1;
          ++added;
        }
    return added;
  }
  int count() const { return static_cast<int>(std::count(cells.begin(), cells.end(), 1)); }
};

/// Semi-discrete right-hand side plus what the step loop needs from it.
template <int D>
struct Tendency {
  Field<D> rhs;
  double max_speed_x = 0.0;
  double max_speed_y = 0.0;
  double pm_defect = 0.0;  // max |p_i + m_i - 1| over all faces
  int fallbacks = 0;
};

/// The spatial operator: ghost fill, reconstruction, global fluxes, flux
/// assembly and divided differences, swept row by row and column by column.
template <class Model>
class Solver {
 public:
  static constexpr int D = Model::ncomp;
  using StateT = State<D>;

  Solver(Model model, Grid grid, BoundaryCondition bc, SchemeOptions options,
         Bathymetry bathymetry = {})
      : model_(std::move(model)),
        grid_(grid),
        bc_(std::move(bc)),
        options_(options),
        bathymetry_(std::move(bathymetry)) {
    options_.slope.validate();
    bc_.validate(grid_, D);
    if (!(options_.eps0 > 0.0)) throw ConfigError("eps0 must be positive");
    if (grid_.nx < 4 || (grid_.dimension == 2 && grid_.ny < 4))
      throw ConfigError("grids need at least 4 cells per direction");
    if (!options_.reconstruction) options_.reconstruction = default_reconstruction<Model>();
    if (*options_.reconstruction == ReconstructionMode::equilibrium && !HasEquilibriumMap<Model>)
      throw ConfigError("model " + model_.name() + " has no equilibrium reconstruction");
    build_geometry();
  }

  const Model& model() const { return model_; }
  const Grid& grid() const { return grid_; }
  const BoundaryCondition& boundary() const { return bc_; }
  const SchemeOptions& options() const { return options_; }
  const Bathymetry& bathymetry() const { return bathymetry_; }
  ReconstructionMode reconstruction() const { return *options_.reconstruction; }

  Direction line_direction() const { return grid_.dimension == 2 ? Direction::x : model_.axis_1d(); }

  Tendency<D> evaluate(const Field<D>& u_in, const CuPatch& patch = {}) const {
    Field<D> u = u_in;
    fill_ghosts(u, bc_);
    Tendency<D> out;
    out.rhs = Field<D>(grid_);
    const int g = Grid::ghost_width;
    std::vector<StateT> line, flux;

    if (grid_.dimension == 1) {
      line.assign(u.raw().begin(), u.raw().end());
      sweep(line, rows_[0], line_direction(), flux, out.max_speed_x, out,
            [&](int c) { return patch.has(c, 0); });
      for (int j = 0; j < grid_.nx; ++j)
        out.rhs.at(j) = (-1.0 / grid_.dx) * (flux[j + 1] - flux[j]);
      return out;
    }

    line.resize(grid_.nx + 2 * g);
    for (int k = 0; k < grid_.ny; ++k) {
      for (int j = -g; j < grid_.nx + g; ++j) line[j + g] = u.at(j, k);
      try {
        sweep(line, rows_[k], Direction::x, flux, out.max_speed_x, out,
              [&](int c) { return patch.has(c, k); });
      } catch (NumericalError& e) {
        e.set_location(Location{.j = e.where().j, .k = k, .t = e.where().t, .stage = e.where().stage});
        throw;
      }
      for (int j = 0; j < grid_.nx; ++j)
        out.rhs.at(j, k) = (-1.0 / grid_.dx) * (flux[j + 1] - flux[j]);
    }
    line.resize(grid_.ny + 2 * g);
    for (int j = 0; j < grid_.nx; ++j) {
      for (int k = -g; k < grid_.ny + g; ++k) line[k + g] = u.at(j, k);
      try {
        sweep(line, columns_[j], Direction::y, flux, out.max_speed_y, out,
              [&](int c) { return patch.has(j, c); });
      } catch (NumericalError& e) {
        e.set_location(Location{.j = j, .k = e.where().j, .t = e.where().t, .stage = e.where().stage});
        throw;
      }
      for (int k = 0; k < grid_.ny; ++k) {
        StateT& r = out.rhs.at(j, k);
        r = r - (1.0 / grid_.dy) * (flux[k + 1] - flux[k]);
      }
    }
    return out;
  }

  Field<D> rhs(const Field<D>& u, const CuPatch& patch = {}) const {
    return evaluate(u, patch).rhs;
  }

  /// Throws NumericalError at the first interior cell of an updated state
  /// that the model rejects.
  void check_step_result(const Field<D>& u) const {
    u.for_each_interior([&](int j, int k, const StateT& s) {
      if (!model_.is_admissible(s))
        throw AdmissibilityError("inadmissible cell average after a time step",
                                 Location{.j = j, .k = grid_.dimension == 2 ? std::optional<int>(k)
                                                                            : std::nullopt});
    });
  }

  /// Throws ConfigError naming the first interior cell the model rejects.
  void check_admissible(const Field<D>& u) const {
    u.for_each_interior([&](int j, int k, const StateT& s) {
      if (!model_.is_admissible(s))
        throw ConfigError("state is inadmissible at cell (" + std::to_string(j) + ", " +
                          std::to_string(k) + ")");
    });
  }

 private:
  void build_geometry() {
    const int g = Grid::ghost_width;
    auto coord = [g](double lo, double h, int i) { return lo + (i - g + 0.5) * h; };
    auto face = [g](double lo, double h, int i) { return lo + (i - g) * h; };
    if (grid_.dimension == 1) {
      const int n = grid_.nx + 2 * g;
      const bool along_y = line_direction() == Direction::y;
      LineGeometry geo = LineGeometry::flat(n, grid_.dx);
      for (int i = 0; i <= n; ++i) {
        const double s = face(grid_.x_min, grid_.dx, i);
        geo.z_face[i] = along_y ? bathymetry_.z(0.0, s) : bathymetry_.z(s, 0.0);
      }
      for (int i = 0; i < n; ++i) {
        const double s = coord(grid_.x_min, grid_.dx, i);
        geo.z_center[i] = along_y ? bathymetry_.z(0.0, s) : bathymetry_.z(s, 0.0);
        geo.coriolis[i] = bathymetry_.coriolis(along_y ? s : 0.0);
      }
      geo.faces_from_centers();
      rows_.push_back(std::move(geo));
      return;
    }
    const int nxl = grid_.nx + 2 * g, nyl = grid_.ny + 2 * g;
    for (int k = 0; k < grid_.ny; ++k) {
      const double y = grid_.yc(k);
      LineGeometry geo = LineGeometry::flat(nxl, grid_.dx);
      for (int i = 0; i <= nxl; ++i) geo.z_face[i] = bathymetry_.z(face(grid_.x_min, grid_.dx, i), y);
      for (int i = 0; i < nxl; ++i) {
        geo.z_center[i] = bathymetry_.z(coord(grid_.x_min, grid_.dx, i), y);
        geo.coriolis[i] = bathymetry_.coriolis(y);
      }
      geo.faces_from_centers();
      rows_.push_back(std::move(geo));
    }
    for (int j = 0; j < grid_.nx; ++j) {
      const double x = grid_.xc(j);
      LineGeometry geo = LineGeometry::flat(nyl, grid_.dy);
      for (int i = 0; i <= nyl; ++i) geo.z_face[i] = bathymetry_.z(x, face(grid_.y_min, grid_.dy, i));
      for (int i = 0; i < nyl; ++i) {
        const double y = coord(grid_.y_min, grid_.dy, i);
        geo.z_center[i] = bathymetry_.z(x, y);
        geo.coriolis[i] = bathymetry_.coriolis(y);
      }
      geo.faces_from_centers();
      columns_.push_back(std::move(geo));
    }
  }

  // Interface fluxes of one line (ghosts included) into `flux`, one per
  // face of the interior cells. Face m lies between interior cells m-1 and m.
  template <class InPatch>
  void sweep(const std::vector<StateT>& line, const LineGeometry& geo, Direction dir,
             std::vector<StateT>& flux, double& max_speed, Tendency<D>& stats,
             InPatch&& in_patch) const {
    const std::span<const StateT> cells(line);
    InterfaceStates<D> faces;
    GlobalFluxData<D> gf;
    if (*options_.reconstruction == ReconstructionMode::equilibrium) {
      if constexpr (HasEquilibriumMap<Model>) {
        const SourceAccumulation<D> acc = accumulate_cell_sources<D>(model_, cells, geo, dir);
        faces = reconstruct_equilibrium<D>(model_, cells, acc, geo.spacing, options_.slope, dir,
                                           options_.policy);
        gf = global_fluxes_from_equilibrium<D>(model_, faces, acc, dir);
      }
    } else {
      faces = reconstruct_conservative<D>(
          cells, geo.spacing, options_.slope,
          [this](const StateT& s) { return model_.is_admissible(s); }, options_.policy);
      gf = assemble_global_fluxes<D>(model_, faces, geo, dir);
    }
    stats.fallbacks += faces.fallbacks;

    const std::size_t nf = faces.size();
    flux.resize(nf);
    const bool lcd = options_.variant == SchemeVariant::lcd_pccu;
    for (std::size_t m = 0; m < nf; ++m) {
      try {
        const LocalSpeeds<D> speeds = local_speeds<D>(model_, faces.minus[m], faces.plus[m], dir);
        max_speed = std::max(max_speed, speeds.max_abs());
        PMQ<D> w;
        Eigensystem<D> eig = Eigensystem<D>::trivial();
        const int c = static_cast<int>(m);
        if (lcd && !in_patch(c - 1) && !in_patch(c)) {
          w = pmq_lcd<D>(speeds, options_.eps0);
          eig = model_.eigensystem(line[m + 1], line[m + 2], dir);
        } else {
          w = pmq_cu<D>(speeds, options_.eps0);
        }
        stats.pm_defect = std::max(stats.pm_defect, w.sum_defect());
        flux[m] = assemble_flux<D>(eig, w, gf.k_minus[m], gf.k_plus[m], faces.breve_minus[m],
                                   faces.breve_plus[m]);
      } catch (NumericalError& e) {
        e.add_location(Location{.j = static_cast<int>(m)});
        throw;
      }
    }
  }

  Model model_;
  Grid grid_;
  BoundaryCondition bc_;
  SchemeOptions options_;
  Bathymetry bathymetry_;
  std::vector<LineGeometry> rows_;     // one per interior row (or the single 1-D line)
  std::vector<LineGeometry> columns_;  // one per interior column
};

struct RunSettings {
  StepController step;
  std::vector<double> snapshot_times;  // t = 0 and t_final are always recorded
  std::optional<long> max_steps;       // stop early after this many steps
};

template <int D>
struct Snapshot {
  double t = 0.0;
  Field<D> field;
  State<D> integral = zero_state<D>();
  bool last_good = false;  // written after a failure
};

template <int D>
struct RunReport {
  std::vector<Snapshot<D>> snapshots;
  Field<D> final_field;
  double t_reached = 0.0;
  long steps = 0;
  std::vector<double> dt_history;
  std::vector<double> speed_x_history;
  std::vector<double> speed_y_history;
  State<D> initial_integral = zero_state<D>();
  State<D> final_integral = zero_state<D>();
  double max_pm_defect = 0.0;
  long fallbacks = 0;
  long cu_retry_steps = 0;  // LCD steps redone with local CU weights
  long cu_retry_cells = 0;  // cells in those patches, summed over steps
  double wall_seconds = 0.0;
  std::optional<std::string> failure;
  Location failure_location;

  bool ok() const { return !failure; }
};

/// Normalized output times: sorted, unique, within (0, t_final].
inline std::vector<double> output_schedule(const std::vector<double>& times, double t_final) {
  std::vector<double> out;
  for (double s : times) {
    if (!std::isfinite(s) || s < 0.0) throw ConfigError("snapshot times must be finite and >= 0");
    if (s > t_final) throw ConfigError("snapshot time " + std::to_string(s) + " exceeds t_final");
    if (s > 0.0) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Advances `u0` to t_final with SSP-RK3. Numerical failures end the run
/// with `failure` set and the last good state appended as a snapshot.
template <class Model>
RunReport<Model::ncomp> run(const Solver<Model>& solver, Field<Model::ncomp> u0,
                            const RunSettings& settings) {
  constexpr int D = Model::ncomp;
  settings.step.validate();
  solver.check_admissible(u0);
  std::vector<double> outputs = settings.snapshot_times;
  outputs.push_back(settings.step.t_final);
  outputs = output_schedule(outputs, settings.step.t_final);
  const auto start = std::chrono::steady_clock::now();

  RunReport<D> report;
  report.initial_integral = u0.integral();
  report.snapshots.push_back({0.0, u0, report.initial_integral, false});

  Field<D> u = std::move(u0);
  double t = 0.0;
  std::size_t next_out = 0;
  const double t_final = settings.step.t_final;
  Location where;

  CuPatch patch;
  auto stage_rhs = [&](const Field<D>& v) {
    Tendency<D> tend = solver.evaluate(v, patch);
    report.max_pm_defect = std::max(report.max_pm_defect, tend.pm_defect);
    report.fallbacks += tend.fallbacks;
    return std::move(tend.rhs);
  };
  const bool may_retry = solver.options().variant == SchemeVariant::lcd_pccu &&
                         solver.options().local_cu_retry;
  const Grid& grid = solver.grid();

  try {
    while (t < t_final) {
      if (settings.max_steps && report.steps >= *settings.max_steps) break;
      where = Location{.t = t, .stage = 1};
      Tendency<D> l0 = solver.evaluate(u);
      report.max_pm_defect = std::max(report.max_pm_defect, l0.pm_defect);
      report.fallbacks += l0.fallbacks;

      const double stop = next_out < outputs.size() ? outputs[next_out] : t_final;
      double dt = cfl_dt(l0.max_speed_x, l0.max_speed_y, grid, settings.step.cfl);
      if (settings.step.dt_max) dt = std::min(dt, *settings.step.dt_max);
      bool lands = false;
      if (dt >= stop - t) {
        dt = stop - t;
        lands = true;
      }
      if (!(dt > 0.0)) throw NumericalError("time step collapsed to zero", Location{.t = t});

      where = Location{.t = t};
      patch = CuPatch{grid.nx, grid.dimension == 2 ? grid.ny : 1, {}};
      for (int attempt = 0;; ++attempt) {
        try {
          Field<D> next = patch.empty() ? ssprk3_step(stage_rhs, u, dt, &l0.rhs)
                                        : ssprk3_step(stage_rhs, u, dt);
          solver.check_step_result(next);
          u = std::move(next);
          break;
        } catch (NumericalError& e) {
          if (!may_retry || attempt >= solver.options().max_retries) throw;
          const Location& w = e.where();
          if (w.j)
            patch.mark(*w.j, w.k.value_or(0), 2 * (attempt + 1));
          else
            patch.mark(0, 0, std::max(grid.nx, grid.ny));
        }
      }
      if (!patch.empty()) {
        ++report.cu_retry_steps;
        report.cu_retry_cells += patch.count();
      }
      t = lands ? stop : t + dt;
      ++report.steps;
      report.dt_history.push_back(dt);
      report.speed_x_history.push_back(l0.max_speed_x);
      report.speed_y_history.push_back(l0.max_speed_y);

      if (lands && next_out < outputs.size() && t == outputs[next_out]) {
        report.snapshots.push_back({t, u, u.integral(), false});
        ++next_out;
      }
    }
  } catch (NumericalError& e) {
    e.add_location(where);
    report.failure = e.what();
    report.failure_location = e.where();
    report.snapshots.push_back({t, u, u.integral(), true});
  }

  report.t_reached = t;
  report.final_integral = u.integral();
  report.final_field = std::move(u);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace pccu

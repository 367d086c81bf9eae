#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "grid.hpp"

namespace pccu {

struct StepController {
  double cfl = 0.45;
  double t_final = 0.0;
  std::optional<double> dt_max;

  void validate() const {
    if (!(cfl > 0.0 && cfl < 1.0))
      throw ConfigError("CFL number must lie in (0, 1), got " + std::to_string(cfl));
    if (!(t_final >= 0.0) || !std::isfinite(t_final))
      throw ConfigError("final time must be finite and non-negative");
    if (dt_max && !(*dt_max > 0.0)) throw ConfigError("dt_max must be positive");
  }
};

/// Unclipped CFL step cfl / (a_x/dx + a_y/dy). In 1-D only the x term is
/// used. Returns +inf when nothing moves.
inline double cfl_dt(double max_speed_x, double max_speed_y, const Grid& grid, double cfl) {
  if (max_speed_x < 0.0 || max_speed_y < 0.0) throw ConfigError("negative wave speed bound");
  double rate = max_speed_x / grid.dx;
  if (grid.dimension == 2) rate += max_speed_y / grid.dy;
  if (rate == 0.0) return std::numeric_limits<double>::infinity();
  return cfl / rate;
}

/// CFL step clipped to dt_max, to the next output time after t, and to
/// t_final. With all speeds zero the step is dt_max or the remaining time.
inline double cfl_dt(double max_speed_x, double max_speed_y, const Grid& grid,
                     const StepController& ctl, double t = 0.0,
                     const std::vector<double>& output_times = {}) {
  double dt = cfl_dt(max_speed_x, max_speed_y, grid, ctl.cfl);
  if (ctl.dt_max) dt = std::min(dt, *ctl.dt_max);
  double stop = ctl.t_final;
  for (double s : output_times)
    if (s > t && s < stop) stop = s;
  if (t + dt >= stop) dt = stop - t;
  return dt;
}

namespace detail {

inline bool finite_value(double v) { return std::isfinite(v); }
template <int D>
bool finite_value(const Field<D>& f) {
  return f.interior_finite();
}
template <std::size_t N>
bool finite_value(const std::array<double, N>& s) {
  for (double v : s)
    if (!std::isfinite(v)) return false;
  return true;
}

template <class T>
void check_stage(const T& u, int stage) {
  if (!finite_value(u))
    throw NumericalError("non-finite state after Runge-Kutta stage", Location{.stage = stage});
}

}  // namespace detail

/// Stage weights (a, b) in U^{(s)} = a U^n + b (U^{(s-1)} + dt L(U^{(s-1)})).
inline constexpr double kSsp3Weights[3][2] = {{0.0, 1.0}, {0.75, 0.25}, {1.0 / 3.0, 2.0 / 3.0}};

/// One SSP-RK3 step. `rhs(U)` returns L(U); T needs +, and scalar *.
/// `l0`, if given, is L(U^n) already evaluated (e.g. while picking dt).
template <class T, class Rhs>
T ssprk3_step(Rhs&& rhs, const T& un, double dt, const T* l0 = nullptr) {
  auto eval = [&rhs](const T& u, int stage) -> T {
    try {
      return rhs(u);
    } catch (NumericalError& e) {
      e.add_location(Location{.stage = stage});
      throw;
    }
  };
  T u1 = un + dt * (l0 ? *l0 : eval(un, 1));
  detail::check_stage(u1, 1);
  T u2 = 0.75 * un + 0.25 * (u1 + dt * eval(u1, 2));
  detail::check_stage(u2, 2);
  T u3 = (1.0 / 3.0) * un + (2.0 / 3.0) * (u2 + dt * eval(u2, 3));
  detail::check_stage(u3, 3);
  return u3;
}

}  // namespace pccu

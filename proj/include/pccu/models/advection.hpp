#pragma once

#include <string>
#include <vector>

#include "../flux.hpp"
#include "../global_flux.hpp"
#include "../state.hpp"

namespace pccu {

/// Linear scalar advection u_t + a u_x + b u_y = 0. Its eigensystem is the
/// identity, which makes it a convenient embedding for checking the flux
/// machinery against upwind differences.
class Advection {
 public:
  static constexpr int ncomp = 1;
  using StateT = State<1>;

  double speed_x = 1.0;
  double speed_y = 0.0;

  Advection() = default;
  Advection(double ax, double ay) : speed_x(ax), speed_y(ay) {}

  std::string name() const { return "advection"; }
  Direction axis_1d() const { return Direction::x; }
  std::vector<int> wall_components(Direction) const { return {}; }
  std::vector<int> conserved_components() const { return {0}; }

  double speed(Direction dir) const { return dir == Direction::x ? speed_x : speed_y; }

  bool is_admissible(const StateT& s) const { return all_finite<1>(s); }
  StateT flux(const StateT& s, Direction dir) const { return {speed(dir) * s[0]}; }
  StateT eigenvalues(const StateT&, Direction dir) const { return {speed(dir)}; }
  StateT nonconservative_product(const StateT&, const StateT&, Direction) const { return {0.0}; }
  StateT source_integral(const StateT&, const StateT&, const CellGeometry&, Direction) const {
    return {0.0};
  }

  Eigensystem<1> eigensystem(const StateT&, const StateT&, Direction dir) const {
    Eigensystem<1> e;
    e.eigenvalues = {speed(dir)};
    return e;
  }
};

}  // namespace pccu

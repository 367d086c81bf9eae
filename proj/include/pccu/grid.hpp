#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "error.hpp"
#include "state.hpp"

namespace pccu {

/// Uniform 1-D or 2-D Cartesian grid. Cell sizes are computed once at
/// construction; every consumer reads dx/dy from here.
struct Grid {
  static constexpr int ghost_width = 2;

  int dimension = 1;
  double x_min = 0.0, x_max = 1.0;
  double y_min = 0.0, y_max = 0.0;
  int nx = 1, ny = 1;
  double dx = 1.0, dy = 1.0;

  static Grid line(double x_min, double x_max, int nx) {
    if (nx < 1 || !(x_max > x_min)) throw ConfigError("invalid 1-D grid extent or cell count");
    Grid g;
    g.dimension = 1;
    g.x_min = x_min;
    g.x_max = x_max;
    g.nx = nx;
    g.ny = 1;
    g.dx = (x_max - x_min) / nx;
    g.dy = 1.0;
    return g;
  }

  static Grid plane(double x_min, double x_max, int nx, double y_min, double y_max, int ny) {
    if (nx < 1 || ny < 1 || !(x_max > x_min) || !(y_max > y_min))
      throw ConfigError("invalid 2-D grid extent or cell count");
    Grid g;
    g.dimension = 2;
    g.x_min = x_min;
    g.x_max = x_max;
    g.y_min = y_min;
    g.y_max = y_max;
    g.nx = nx;
    g.ny = ny;
    g.dx = (x_max - x_min) / nx;
    g.dy = (y_max - y_min) / ny;
    return g;
  }

  double xc(int j) const { return x_min + (j + 0.5) * dx; }
  double yc(int k) const { return dimension == 2 ? y_min + (k + 0.5) * dy : 0.0; }
  double x_face(int j) const { return x_min + j * dx; }  // left face of cell j
  double y_face(int k) const { return y_min + k * dy; }

  int total_x() const { return nx + 2 * ghost_width; }
  int total_y() const { return dimension == 2 ? ny + 2 * ghost_width : 1; }
  std::size_t total_cells() const { return static_cast<std::size_t>(total_x()) * total_y(); }
  std::size_t interior_cells() const {
    return static_cast<std::size_t>(nx) * (dimension == 2 ? ny : 1);
  }
  double cell_volume() const { return dimension == 2 ? dx * dy : dx; }

  bool operator==(const Grid&) const = default;
};

/// Cell averages with ghost layers. Storage is row-major over (k, j) with
/// the d components innermost.
template <int D>
class Field {
 public:
  static constexpr int components = D;

  Field() = default;
  explicit Field(const Grid& grid) : grid_(grid), cells_(grid.total_cells(), zero_state<D>()) {}

  const Grid& grid() const { return grid_; }

  // j, k are interior indices; ghosts are j < 0 or j >= nx (same for k).
  State<D>& at(int j, int k = 0) { return cells_[index(j, k)]; }
  const State<D>& at(int j, int k = 0) const { return cells_[index(j, k)]; }

  std::vector<State<D>>& raw() { return cells_; }
  const std::vector<State<D>>& raw() const { return cells_; }

  template <class Fn>
  void for_each_interior(Fn&& fn) {
    const int ny = grid_.dimension == 2 ? grid_.ny : 1;
    for (int k = 0; k < ny; ++k)
      for (int j = 0; j < grid_.nx; ++j) fn(j, k, at(j, k));
  }
  template <class Fn>
  void for_each_interior(Fn&& fn) const {
    const int ny = grid_.dimension == 2 ? grid_.ny : 1;
    for (int k = 0; k < ny; ++k)
      for (int j = 0; j < grid_.nx; ++j) fn(j, k, at(j, k));
  }

  bool interior_finite() const {
    bool ok = true;
    for_each_interior([&ok](int, int, const State<D>& u) { ok = ok && all_finite<D>(u); });
    return ok;
  }

  /// Sum of each component over interior cells, weighted by cell volume.
  State<D> integral() const {
    State<D> sum = zero_state<D>();
    for_each_interior([&sum](int, int, const State<D>& u) {
      for (int i = 0; i < D; ++i) sum[i] += u[i];
    });
    const double vol = grid_.cell_volume();
    for (double& s : sum) s *= vol;
    return sum;
  }

  Field& operator+=(const Field& other) {
    for (std::size_t n = 0; n < cells_.size(); ++n)
      for (int i = 0; i < D; ++i) cells_[n][i] += other.cells_[n][i];
    return *this;
  }
  Field& operator*=(double s) {
    for (auto& c : cells_)
      for (double& v : c) v *= s;
    return *this;
  }
  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator*(double s, Field a) { return a *= s; }

 private:
  std::size_t index(int j, int k) const {
    const int g = Grid::ghost_width;
    const int kk = grid_.dimension == 2 ? k + g : 0;
    return static_cast<std::size_t>(kk) * grid_.total_x() + static_cast<std::size_t>(j + g);
  }

  Grid grid_;
  std::vector<State<D>> cells_;
};

template <int D>
bool all_finite(const Field<D>& f) {
  return f.interior_finite();
}

enum class BcKind { free, solid_wall, periodic };

inline BcKind parse_bc_kind(const std::string& s) {
  if (s == "free") return BcKind::free;
  if (s == "solid_wall" || s == "wall") return BcKind::solid_wall;
  if (s == "periodic") return BcKind::periodic;
  throw ConfigError("unknown boundary condition '" + s + "'");
}

inline const char* to_string(BcKind k) {
  switch (k) {
    case BcKind::free: return "free";
    case BcKind::solid_wall: return "solid_wall";
    case BcKind::periodic: return "periodic";
  }
  return "?";
}

/// Boundary kinds per side plus, for reflecting walls, the components that
/// flip sign (wall-normal momentum, supplied by the model).
struct BoundaryCondition {
  BcKind left = BcKind::free, right = BcKind::free;
  BcKind bottom = BcKind::free, top = BcKind::free;
  std::vector<int> negate_on_x_walls;
  std::vector<int> negate_on_y_walls;

  void validate(const Grid& grid, int components) const {
    if ((left == BcKind::periodic) != (right == BcKind::periodic))
      throw ConfigError("periodic boundary must be set on both left and right sides");
    if (grid.dimension == 2 && (bottom == BcKind::periodic) != (top == BcKind::periodic))
      throw ConfigError("periodic boundary must be set on both bottom and top sides");
    for (const auto* list : {&negate_on_x_walls, &negate_on_y_walls})
      for (int c : *list)
        if (c < 0 || c >= components)
          throw ConfigError("wall component index " + std::to_string(c) +
                            " out of range for a " + std::to_string(components) +
                            "-component field");
  }
};

/// Builds a BoundaryCondition whose wall components come from the model.
template <class Model>
BoundaryCondition make_boundary(const Model& model, BcKind left, BcKind right,
                                BcKind bottom = BcKind::free, BcKind top = BcKind::free) {
  BoundaryCondition bc;
  bc.left = left;
  bc.right = right;
  bc.bottom = bottom;
  bc.top = top;
  bc.negate_on_x_walls = model.wall_components(Direction::x);
  bc.negate_on_y_walls = model.wall_components(Direction::y);
  return bc;
}

namespace detail {

// Fills the two ghost cells at each end of a line of interior cells.
// get(i) addresses line position i in [-2, n+2).
template <int D, class Access>
void fill_line_ghosts(Access&& get, int n, BcKind lo, BcKind hi, const std::vector<int>& negate) {
  const int g = Grid::ghost_width;
  for (int layer = 1; layer <= g; ++layer) {
    // low side: ghost index -layer
    State<D>& gl = get(-layer);
    switch (lo) {
      case BcKind::free: gl = get(0); break;
      case BcKind::periodic: gl = get(n - layer); break;
      case BcKind::solid_wall:
        gl = get(layer - 1);
        for (int c : negate) gl[c] = -gl[c];
        break;
    }
    State<D>& gh = get(n - 1 + layer);
    switch (hi) {
      case BcKind::free: gh = get(n - 1); break;
      case BcKind::periodic: gh = get(layer - 1); break;
      case BcKind::solid_wall:
        gh = get(n - layer);
        for (int c : negate) gh[c] = -gh[c];
        break;
    }
  }
}

}  // namespace detail

/// Populates ghost layers: free copies the nearest interior cell,
/// solid_wall mirrors about the boundary and negates the wall-normal
/// momentum, periodic wraps.
template <int D>
void fill_ghosts(Field<D>& field, const BoundaryCondition& bc) {
  const Grid& grid = field.grid();
  bc.validate(grid, D);
  const int g = Grid::ghost_width;
  if (grid.dimension == 2) {
    for (int j = 0; j < grid.nx; ++j) {
      detail::fill_line_ghosts<D>([&](int k) -> State<D>& { return field.at(j, k); }, grid.ny,
                                  bc.bottom, bc.top, bc.negate_on_y_walls);
    }
    for (int k = -g; k < grid.ny + g; ++k) {
      detail::fill_line_ghosts<D>([&](int j) -> State<D>& { return field.at(j, k); }, grid.nx,
                                  bc.left, bc.right, bc.negate_on_x_walls);
    }
  } else {
    detail::fill_line_ghosts<D>([&](int j) -> State<D>& { return field.at(j, 0); }, grid.nx,
                                bc.left, bc.right, bc.negate_on_x_walls);
  }
}

/// Midpoint-rule cell averages: each interior cell gets f at its center.
template <int D>
Field<D> init_from_function(const Grid& grid, const std::function<State<D>(double, double)>& f) {
  Field<D> field(grid);
  field.for_each_interior([&](int j, int k, State<D>& u) {
    u = f(grid.xc(j), grid.yc(k));
    if (!all_finite<D>(u))
      throw ConfigError("initial condition is not finite at cell (" + std::to_string(j) + ", " +
                        std::to_string(k) + ")");
  });
  return field;
}

}  // namespace pccu

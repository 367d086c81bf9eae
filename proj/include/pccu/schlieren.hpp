#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "error.hpp"
#include "grid.hpp"

namespace pccu {

struct SchlierenParams {
  double amplification = 80.0;
};

/// |grad rho| on an nx x ny array stored row-major (k outer): central
/// differences inside, one-sided differences on the boundary ring.
inline std::vector<double> gradient_magnitude(const std::vector<double>& rho, int nx, int ny,
                                              double dx, double dy) {
  if (nx < 3 || ny < 3) throw ConfigError("gradient needs at least 3 x 3 cells");
  if (rho.size() != static_cast<std::size_t>(nx) * ny)
    throw ConfigError("density array size does not match the grid");
  auto at = [&](int j, int k) { return rho[static_cast<std::size_t>(k) * nx + j]; };
  std::vector<double> g(rho.size());
  for (int k = 0; k < ny; ++k) {
    for (int j = 0; j < nx; ++j) {
      double rx, ry;
      if (j == 0) rx = (at(1, k) - at(0, k)) / dx;
      else if (j == nx - 1) rx = (at(nx - 1, k) - at(nx - 2, k)) / dx;
      else rx = (at(j + 1, k) - at(j - 1, k)) / (2.0 * dx);
      if (k == 0) ry = (at(j, 1) - at(j, 0)) / dy;
      else if (k == ny - 1) ry = (at(j, ny - 1) - at(j, ny - 2)) / dy;
      else ry = (at(j, k + 1) - at(j, k - 1)) / (2.0 * dy);
      g[static_cast<std::size_t>(k) * nx + j] = std::sqrt(rx * rx + ry * ry);
    }
  }
  return g;
}

/// Shading exp(-amp |grad rho| / max |grad rho|); a constant field maps to
/// all ones.
inline std::vector<double> schlieren(const std::vector<double>& rho, int nx, int ny, double dx,
                                     double dy, const SchlierenParams& params = {}) {
  std::vector<double> g = gradient_magnitude(rho, nx, ny, dx, dy);
  const double gmax = *std::max_element(g.begin(), g.end());
  for (double& v : g) v = gmax > 0.0 ? std::exp(-params.amplification * v / gmax) : 1.0;
  return g;
}

/// Extracts one component of the interior of a 2-D field, row-major.
template <int D>
std::vector<double> component_values(const Field<D>& f, int component) {
  const Grid& g = f.grid();
  std::vector<double> out;
  out.reserve(g.interior_cells());
  f.for_each_interior([&](int, int, const State<D>& u) { out.push_back(u[component]); });
  return out;
}

template <int D>
std::vector<double> schlieren(const Field<D>& f, int density_component = 0,
                              const SchlierenParams& params = {}) {
  const Grid& g = f.grid();
  if (g.dimension != 2) throw ConfigError("schlieren images need a 2-D field");
  return schlieren(component_values(f, density_component), g.nx, g.ny, g.dx, g.dy, params);
}

}  // namespace pccu

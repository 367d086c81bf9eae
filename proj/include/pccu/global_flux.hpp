#pragma once

#include <vector>

#include "reconstruct.hpp"
#include "state.hpp"

namespace pccu {

/// Geometry of one segment [west, east] of a sweep line: its width, the
/// topography at both ends and the Coriolis parameter at its center.
struct CellGeometry {
  double width = 0.0;
  double z_west = 0.0;
  double z_east = 0.0;
  double coriolis = 0.0;
};

/// Per-line geometric data for a sweep over n cells (ghosts included).
struct LineGeometry {
  double spacing = 1.0;
  std::vector<double> z_face;    // n + 1 entries; z_face[i] is the west face of cell i
  std::vector<double> z_center;  // n entries
  std::vector<double> coriolis;  // n entries, f at cell centers

  static LineGeometry flat(std::size_t n, double spacing) {
    LineGeometry g;
    g.spacing = spacing;
    g.z_face.assign(n + 1, 0.0);
    g.z_center.assign(n, 0.0);
    g.coriolis.assign(n, 0.0);
    return g;
  }

  /// Interior face heights become the mean of the two neighbouring center
  /// samples, which makes lake-at-rest states exact discrete equilibria for
  /// any bottom shape.
  void faces_from_centers() {
    for (std::size_t i = 1; i < z_center.size(); ++i) z_face[i] = 0.5 * (z_center[i - 1] + z_center[i]);
  }

  CellGeometry cell(std::size_t i) const {
    return {spacing, z_face[i], z_face[i + 1], coriolis[i]};
  }
  CellGeometry west_half(std::size_t i) const {
    return {0.5 * spacing, z_face[i], z_center[i], coriolis[i]};
  }
  CellGeometry east_half(std::size_t i) const {
    return {0.5 * spacing, z_center[i], z_face[i + 1], coriolis[i]};
  }
};

/// Global fluxes K^\pm = F(U^\pm) - W^\pm at every face of a line, plus the
/// accumulated W^\pm themselves. Face m matches InterfaceStates entry m.
template <int D>
struct GlobalFluxData {
  std::vector<State<D>> k_minus, k_plus;
  std::vector<State<D>> w_minus, w_plus;
};

/// Path integral of B(U) U_s across a face jump along the straight segment
/// in conservative variables, with B frozen at the segment midpoint.
template <int D, class Model>
State<D> interface_jump_increment(const Model& model, const State<D>& u_minus,
                                  const State<D>& u_plus, Direction dir) {
  return model.nonconservative_product(midpoint<D>(u_minus, u_plus), u_plus - u_minus, dir);
}

/// In-cell integral of B U_x + S between the two inner point values of a
/// cell (or half cell): midpoint B on the inner jump plus the model's
/// quadrature of the source.
template <int D, class Model>
State<D> cell_increment(const Model& model, const State<D>& u_west, const State<D>& u_east,
                        const CellGeometry& geom, Direction dir) {
  State<D> inc = model.nonconservative_product(midpoint<D>(u_west, u_east), u_east - u_west, dir);
  const State<D> src = model.source_integral(u_west, u_east, geom, dir);
  for (int i = 0; i < D; ++i) inc[i] += src[i];
  return inc;
}

/// Left-to-right prefix accumulation of W over the faces of a line of
/// reconstructed states, anchored at W^- = 0 on the first face (the west
/// boundary of the interior).
template <int D, class Model>
GlobalFluxData<D> assemble_global_fluxes(const Model& model, const InterfaceStates<D>& faces,
                                         const LineGeometry& geom, Direction dir) {
  const std::size_t nf = faces.size();
  GlobalFluxData<D> out;
  out.k_minus.resize(nf);
  out.k_plus.resize(nf);
  out.w_minus.resize(nf);
  out.w_plus.resize(nf);
  State<D> w = zero_state<D>();
  for (std::size_t m = 0; m < nf; ++m) {
    if (m > 0) {
      // cell between face m-1 and face m is line cell m+1
      const State<D> inc = cell_increment<D>(model, faces.plus[m - 1], faces.minus[m],
                                             geom.cell(m + 1), dir);
      w = w + inc;
    }
    out.w_minus[m] = w;
    w = w + interface_jump_increment<D>(model, faces.minus[m], faces.plus[m], dir);
    out.w_plus[m] = w;
    out.k_minus[m] = model.flux(faces.minus[m], dir) - out.w_minus[m];
    out.k_plus[m] = model.flux(faces.plus[m], dir) - out.w_plus[m];
  }
  return out;
}

/// W at cell centers and faces accumulated from cell averages, in half-cell
/// steps. Used to form equilibrium variables before reconstruction (the
/// face values must not depend on reconstructed states). Requires B = 0.
/// Anchor: W = 0 on the west face of the first interior cell (line cell 2).
template <int D, class Model>
SourceAccumulation<D> accumulate_cell_sources(const Model& model,
                                              std::span<const State<D>> line,
                                              const LineGeometry& geom, Direction dir) {
  const std::size_t n = line.size();
  SourceAccumulation<D> acc;
  acc.center.assign(n, zero_state<D>());
  acc.face.assign(n + 1, zero_state<D>());
  const std::size_t anchor = std::min<std::size_t>(2, n);
  acc.face[anchor] = zero_state<D>();
  for (std::size_t i = anchor; i < n; ++i) {
    acc.center[i] = acc.face[i] + cell_increment<D>(model, line[i], line[i], geom.west_half(i), dir);
    acc.face[i + 1] =
        acc.center[i] + cell_increment<D>(model, line[i], line[i], geom.east_half(i), dir);
  }
  for (std::size_t i = anchor; i-- > 0;) {
    acc.center[i] =
        acc.face[i + 1] - cell_increment<D>(model, line[i], line[i], geom.east_half(i), dir);
    acc.face[i] = acc.center[i] - cell_increment<D>(model, line[i], line[i], geom.west_half(i), dir);
  }
  return acc;
}

/// Global fluxes read off the reconstructed equilibrium variables, so that
/// equal E on both sides of a face gives bitwise-equal K^\pm.
template <int D, class Model>
GlobalFluxData<D> global_fluxes_from_equilibrium(const Model& model,
                                                 const InterfaceStates<D>& faces,
                                                 const SourceAccumulation<D>& acc, Direction dir) {
  const std::size_t nf = faces.size();
  GlobalFluxData<D> out;
  out.k_minus.resize(nf);
  out.k_plus.resize(nf);
  out.w_minus.resize(nf);
  out.w_plus.resize(nf);
  for (std::size_t m = 0; m < nf; ++m) {
    out.w_minus[m] = out.w_plus[m] = acc.face[m + 2];
    out.k_minus[m] = model.global_flux_from_equilibrium(faces.eq_minus[m], dir);
    out.k_plus[m] = model.global_flux_from_equilibrium(faces.eq_plus[m], dir);
  }
  return out;
}

}  // namespace pccu

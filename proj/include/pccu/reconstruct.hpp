#pragma once

#include <algorithm>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "state.hpp"

namespace pccu {

/// Generalized minmod parameter; theta = 1 is the most dissipative choice,
/// theta = 2 the most compressive.
struct SlopeParams {
  double theta = 1.3;

  void validate() const {
    if (!(theta >= 1.0 && theta <= 2.0))
      throw ConfigError("limiter parameter theta must lie in [1, 2], got " + std::to_string(theta));
  }
};

/// What to do when a limited reconstruction produces an unusable point
/// value (inadmissible state, no root of the equilibrium inverse).
struct ReconstructionPolicy {
  /// Drop the offending cell to a constant (first-order) profile instead of
  /// failing the evaluation.
  bool first_order_fallback = true;
};

inline double minmod(std::span<const double> z) {
  if (z.empty()) return 0.0;
  const bool all_pos = std::all_of(z.begin(), z.end(), [](double v) { return v > 0.0; });
  if (all_pos) return *std::min_element(z.begin(), z.end());
  const bool all_neg = std::all_of(z.begin(), z.end(), [](double v) { return v < 0.0; });
  if (all_neg) return *std::max_element(z.begin(), z.end());
  return 0.0;
}

inline double minmod(std::initializer_list<double> z) {
  return minmod(std::span<const double>(z.begin(), z.size()));
}

inline double minmod3(double a, double b, double c) {
  if (a > 0.0 && b > 0.0 && c > 0.0) return std::min(a, std::min(b, c));
  if (a < 0.0 && b < 0.0 && c < 0.0) return std::max(a, std::max(b, c));
  return 0.0;
}

inline double limited_slope(double left, double center, double right, double dx, double theta) {
  return minmod3(theta * (center - left) / dx, (right - left) / (2.0 * dx),
                 theta * (right - center) / dx);
}

/// Component-wise limited slopes for every cell of a line that has both
/// neighbours; the two end cells get zero slope.
template <int D>
std::vector<State<D>> limited_slopes(std::span<const State<D>> line, double dx,
                                     const SlopeParams& params) {
  const std::size_t n = line.size();
  std::vector<State<D>> slopes(n, zero_state<D>());
  for (std::size_t i = 1; i + 1 < n; ++i)
    for (int c = 0; c < D; ++c)
      slopes[i][c] = limited_slope(line[i - 1][c], line[i][c], line[i + 1][c], dx, params.theta);
  return slopes;
}

// Locations attached to errors raised here count cells from the first
// cell after two ghost layers.

/// One-sided point values at the faces of a line of cells. Entry m refers
/// to the face between line cells m+1 and m+2, so a line of n cells yields
/// n-3 faces (with two ghost layers: every face of the interior cells).
template <int D>
struct InterfaceStates {
  std::vector<State<D>> minus, plus;              // U^-, U^+
  std::vector<State<D>> breve_minus, breve_plus;  // steady-state consistent values
  std::vector<State<D>> eq_minus, eq_plus;        // reconstructed E (equilibrium mode only)
  int fallbacks = 0;

  std::size_t size() const { return minus.size(); }

  void resize(std::size_t n) {
    minus.resize(n);
    plus.resize(n);
    breve_minus.resize(n);
    breve_plus.resize(n);
  }
};

/// Piecewise-linear reconstruction of the conservative variables. When an
/// admissibility predicate rejects a cell's face values, that cell's slope
/// is zeroed (policy permitting) or an AdmissibilityError is thrown.
template <int D, class Admissible>
InterfaceStates<D> reconstruct_conservative(std::span<const State<D>> line, double dx,
                                            const SlopeParams& params, Admissible&& admissible,
                                            const ReconstructionPolicy& policy = {}) {
  const std::size_t n = line.size();
  if (n < 4) throw ConfigError("reconstruction needs at least four cells on a line");
  std::vector<State<D>> slopes = limited_slopes<D>(line, dx, params);
  InterfaceStates<D> out;

  for (std::size_t i = 1; i + 1 < n; ++i) {
    const State<D> east = line[i] + (0.5 * dx) * slopes[i];
    const State<D> west = line[i] - (0.5 * dx) * slopes[i];
    if (admissible(east) && admissible(west)) continue;
    if (!policy.first_order_fallback)
      throw AdmissibilityError("reconstructed face value is inadmissible",
                               Location{.j = static_cast<int>(i) - 2});
    slopes[i] = zero_state<D>();
    ++out.fallbacks;
  }

  out.resize(n - 3);
  for (std::size_t m = 0; m + 3 < n; ++m) {
    const std::size_t left = m + 1, right = m + 2;
    out.minus[m] = line[left] + (0.5 * dx) * slopes[left];
    out.plus[m] = line[right] - (0.5 * dx) * slopes[right];
    out.breve_minus[m] = out.minus[m];
    out.breve_plus[m] = out.plus[m];
  }
  return out;
}

template <int D>
InterfaceStates<D> reconstruct_conservative(std::span<const State<D>> line, double dx,
                                            const SlopeParams& params) {
  return reconstruct_conservative<D>(line, dx, params, [](const State<D>&) { return true; });
}

/// Accumulated global-source values along a line, used to build the
/// equilibrium variables. `center[i]` belongs to line cell i and `face[i]`
/// to the left face of line cell i (face[n] is the right end).
template <int D>
struct SourceAccumulation {
  std::vector<State<D>> center;
  std::vector<State<D>> face;
};

/// Piecewise-linear reconstruction of equilibrium variables E followed by
/// the inverse solves E(U) = E^\pm and the modified solves for the breve
/// values. The model supplies:
///   to_equilibrium(U, W, dir), from_equilibrium(E, W, h_guess_state, dir),
///   from_equilibrium_shared(E, E_minus, E_plus, W, guess_state, dir).
template <int D, class Model>
InterfaceStates<D> reconstruct_equilibrium(const Model& model, std::span<const State<D>> line,
                                           const SourceAccumulation<D>& acc, double dx,
                                           const SlopeParams& params, Direction dir,
                                           const ReconstructionPolicy& policy = {}) {
  const std::size_t n = line.size();
  if (n < 4) throw ConfigError("reconstruction needs at least four cells on a line");

  std::vector<State<D>> eq(n);
  for (std::size_t i = 0; i < n; ++i) eq[i] = model.to_equilibrium(line[i], acc.center[i], dir);
  std::vector<State<D>> slopes = limited_slopes<D>(std::span<const State<D>>(eq), dx, params);

  InterfaceStates<D> out;
  out.resize(n - 3);
  out.eq_minus.resize(n - 3);
  out.eq_plus.resize(n - 3);

  // Face values of cell i: east face is face[i+1], west face is face[i].
  std::vector<State<D>> east_u(n), west_u(n), east_e(n), west_e(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    auto attempt = [&](const State<D>& slope) {
      east_e[i] = eq[i] + (0.5 * dx) * slope;
      west_e[i] = eq[i] - (0.5 * dx) * slope;
      east_u[i] = model.from_equilibrium(east_e[i], acc.face[i + 1], line[i], dir);
      west_u[i] = model.from_equilibrium(west_e[i], acc.face[i], line[i], dir);
    };
    try {
      attempt(slopes[i]);
    } catch (NumericalError& e) {
      if (!policy.first_order_fallback) {
        e.add_location(Location{.j = static_cast<int>(i) - 2});
        throw;
      }
      ++out.fallbacks;
      try {
        slopes[i] = zero_state<D>();
        attempt(slopes[i]);
      } catch (const NumericalError&) {
        // Constant conservative profile in this cell.
        east_u[i] = west_u[i] = line[i];
        east_e[i] = model.to_equilibrium(line[i], acc.face[i + 1], dir);
        west_e[i] = model.to_equilibrium(line[i], acc.face[i], dir);
      }
    }
  }

  for (std::size_t m = 0; m + 3 < n; ++m) {
    const std::size_t left = m + 1, right = m + 2;
    out.minus[m] = east_u[left];
    out.plus[m] = west_u[right];
    out.eq_minus[m] = east_e[left];
    out.eq_plus[m] = west_e[right];
    const State<D>& w = acc.face[right];
    try {
      out.breve_minus[m] =
          model.from_equilibrium_shared(out.eq_minus[m], out.eq_minus[m], out.eq_plus[m], w,
                                        out.minus[m], dir);
      out.breve_plus[m] =
          model.from_equilibrium_shared(out.eq_plus[m], out.eq_minus[m], out.eq_plus[m], w,
                                        out.plus[m], dir);
    } catch (NumericalError& e) {
      if (!policy.first_order_fallback) {
        e.add_location(Location{.j = static_cast<int>(m)});  // east cell of the face
        throw;
      }
      ++out.fallbacks;
      out.breve_minus[m] = out.minus[m];
      out.breve_plus[m] = out.plus[m];
    }
  }
  return out;
}

}  // namespace pccu

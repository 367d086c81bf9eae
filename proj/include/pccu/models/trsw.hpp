#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "../error.hpp"
#include "../flux.hpp"
#include "../global_flux.hpp"
#include "../state.hpp"

namespace pccu {

/// Bottom topography Z(x, y) and Coriolis parameter f = f0 + beta y.
/// An empty topography function means a flat bottom.
struct Bathymetry {
  std::function<double(double, double)> topography;
  double f0 = 0.0;
  double beta = 0.0;

  double z(double x, double y) const { return topography ? topography(x, y) : 0.0; }
  double coriolis(double y) const { return f0 + beta * y; }
  bool flat() const { return !topography; }
};

struct TrswPrimitive {
  double h = 1.0;
  double u = 0.0;
  double v = 0.0;
  double b = 1.0;
};

namespace detail {

inline double cubic_residual(double h, double m2, double b, double rhs) {
  return m2 / h + 0.5 * b * h * h - rhs;
}

// Newton on g(h) = m^2/h + b h^2/2 - rhs inside a bracket [lo, hi] where g
// changes sign; falls back to bisection whenever Newton leaves the bracket.
inline double bracketed_newton(double lo, double hi, double guess, double m2, double b,
                               double rhs) {
  double glo = cubic_residual(lo, m2, b, rhs);
  double h = std::clamp(guess, lo, hi);
  for (int it = 0; it < 50; ++it) {
    const double g = cubic_residual(h, m2, b, rhs);
    if (std::fabs(g) <= 4e-16 * (m2 / h + 0.5 * b * h * h)) return h;
    if ((g > 0.0) == (glo > 0.0)) {
      lo = h;
      glo = g;
    } else {
      hi = h;
    }
    const double dg = -m2 / (h * h) + b * h;
    double next = dg != 0.0 ? h - g / dg : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - h) <= 1e-15 * h || hi - lo <= 4e-16 * hi) return next;
    h = next;
  }
  throw ReconstructionError("thickness solve did not converge in 50 iterations");
}

}  // namespace detail

/// Positive root of m^2/h + b h^2/2 = rhs closest to `guess`. With m != 0
/// there are up to two roots, separated by the critical depth
/// h_c = (m^2/b)^(1/3).
inline double solve_thickness(double m, double b, double rhs, double guess) {
  if (!std::isfinite(m) || !std::isfinite(b) || !std::isfinite(rhs))
    throw ReconstructionError("non-finite data in thickness solve");
  if (!(b > 0.0)) throw ReconstructionError("non-positive buoyancy in thickness solve");
  if (!(rhs > 0.0)) throw ReconstructionError("no positive thickness: momentum flux <= 0");
  const double m2 = m * m;
  if (m2 == 0.0) return std::sqrt(2.0 * rhs / b);

  const double hc = std::cbrt(m2 / b);
  const double gc = detail::cubic_residual(hc, m2, b, rhs);
  if (gc > 0.0) throw ReconstructionError("no positive thickness: momentum flux below critical");
  if (gc == 0.0) return hc;

  const double hi = std::sqrt(2.0 * rhs / b);  // g(hi) = m^2/hi > 0
  const double lo = m2 / rhs;                  // g(lo) = b lo^2/2 > 0
  // The root on the guess's own branch wins unless it is farther away than
  // h_c, the closest the other branch can get.
  const bool sub_side = guess >= hc;
  const double own = sub_side ? detail::bracketed_newton(hc, hi, guess, m2, b, rhs)
                              : detail::bracketed_newton(lo, hc, guess, m2, b, rhs);
  if (std::fabs(own - guess) < std::fabs(hc - guess)) return own;
  const double other = sub_side ? detail::bracketed_newton(lo, hc, hc, m2, b, rhs)
                                : detail::bracketed_newton(hc, hi, hc, m2, b, rhs);
  const double sub = sub_side ? own : other, super = sub_side ? other : own;
  return std::fabs(sub - guess) <= std::fabs(super - guess) ? sub : super;
}

/// Thermal rotating shallow water equations (Ripa system with rotation and
/// topography). U = (h, hu, hv, hb).
///
/// In 1-D the line is read as the y-direction and U keeps all four
/// components, with hu advected passively.
template <int Dim>
class Trsw {
  static_assert(Dim == 1 || Dim == 2);

 public:
  static constexpr int dimension = Dim;
  static constexpr int ncomp = 4;
  using StateT = State<4>;
  using MatrixT = Matrix<4>;

  static constexpr double h_min = 1e-10;

  struct Hatted {
    double h, u, v, b;
  };

  std::string name() const { return Dim == 1 ? "trsw-1d" : "trsw-2d"; }
  Direction axis_1d() const { return Direction::y; }

  static int normal_index(Direction dir) { return dir == Direction::x ? 1 : 2; }
  static int transverse_index(Direction dir) { return dir == Direction::x ? 2 : 1; }
  std::vector<int> wall_components(Direction dir) const { return {normal_index(dir)}; }
  std::vector<int> conserved_components() const { return {0, 1, 2, 3}; }

  StateT conservative(const TrswPrimitive& w) const {
    return {w.h, w.h * w.u, w.h * w.v, w.h * w.b};
  }

  TrswPrimitive primitive_unchecked(const StateT& s) const {
    return {s[0], s[1] / s[0], s[2] / s[0], s[3] / s[0]};
  }

  bool is_admissible(const StateT& s) const {
    return all_finite<4>(s) && s[0] > h_min && s[3] > 0.0;
  }

  TrswPrimitive primitive(const StateT& s) const {
    if (!all_finite<4>(s)) throw AdmissibilityError("non-finite shallow water state");
    if (!(s[0] > h_min)) throw AdmissibilityError("thickness below h_min: h=" + std::to_string(s[0]));
    if (!(s[3] > 0.0)) throw AdmissibilityError("non-positive buoyancy: hb=" + std::to_string(s[3]));
    return primitive_unchecked(s);
  }

  StateT flux(const StateT& s, Direction dir) const {
    const int n = normal_index(dir);
    const double un = s[n] / s[0];
    StateT f;
    f[0] = s[n];
    f[1] = s[1] * un;
    f[2] = s[2] * un;
    f[n] += 0.5 * s[3] * s[0];
    f[3] = s[3] * un;
    return f;
  }

  StateT nonconservative_product(const StateT&, const StateT&, Direction) const {
    return zero_state<4>();
  }

  /// Pointwise source for a given topography slope along `dir`.
  StateT source(const StateT& s, double z_slope, double f, Direction dir) const {
    StateT r = zero_state<4>();
    const double sigma = dir == Direction::x ? 1.0 : -1.0;
    r[normal_index(dir)] = sigma * f * s[transverse_index(dir)] - s[3] * z_slope;
    return r;
  }

  /// Trapezoidal quadrature of the source over a segment: the hydrostatic
  /// term uses the segment's topography difference, so it is exact for
  /// piecewise-linear data and keeps lake-at-rest-type states discrete.
  StateT source_integral(const StateT& uw, const StateT& ue, const CellGeometry& geom,
                         Direction dir) const {
    StateT r = zero_state<4>();
    const double sigma = dir == Direction::x ? 1.0 : -1.0;
    const int t = transverse_index(dir);
    r[normal_index(dir)] = -0.5 * (uw[3] + ue[3]) * (geom.z_east - geom.z_west) +
                           sigma * geom.coriolis * geom.width * 0.5 * (uw[t] + ue[t]);
    return r;
  }

  /// Ascending: (u_n - sqrt(bh), u_n, u_n, u_n + sqrt(bh)).
  StateT eigenvalues(const StateT& s, Direction dir) const {
    primitive(s);
    const double un = s[normal_index(dir)] / s[0];
    const double c = std::sqrt(s[3]);
    return {un - c, un, un, un + c};
  }

  // Equilibrium variables along `dir`: (normal discharge, normal momentum
  // flux minus the accumulated source W, b, transverse velocity).
  StateT to_equilibrium(const StateT& s, const StateT& w, Direction dir) const {
    const int n = normal_index(dir);
    const double h = s[0];
    const double m = s[n];
    return {m, m * m / h + 0.5 * s[3] * h - w[n], s[3] / h, s[transverse_index(dir)] / h};
  }

  StateT from_equilibrium(const StateT& e, const StateT& w, const StateT& guess,
                          Direction dir) const {
    return invert(e[0], e[1] + w[normal_index(dir)], e[2], e[3], guess[0], dir);
  }

  /// Inverse with b and the transverse velocity replaced by their
  /// interface means, so both sides of a face share one map.
  StateT from_equilibrium_shared(const StateT& e, const StateT& e_minus, const StateT& e_plus,
                                 const StateT& w, const StateT& guess, Direction dir) const {
    return invert(e[0], e[1] + w[normal_index(dir)], 0.5 * (e_minus[2] + e_plus[2]),
                  0.5 * (e_minus[3] + e_plus[3]), guess[0], dir);
  }

  StateT global_flux_from_equilibrium(const StateT& e, Direction dir) const {
    StateT k;
    k[0] = e[0];
    k[normal_index(dir)] = e[1];
    k[transverse_index(dir)] = e[0] * e[3];
    k[3] = e[0] * e[2];
    return k;
  }

  Hatted hatted(const StateT& left, const StateT& right) const {
    const TrswPrimitive a = primitive_unchecked(left);
    const TrswPrimitive c = primitive_unchecked(right);
    Hatted h{0.5 * (a.h + c.h), 0.5 * (a.u + c.u), 0.5 * (a.v + c.v), 0.5 * (a.b + c.b)};
    if (!(h.h * h.b > 0.0) || !std::isfinite(h.h * h.b))
      throw AdmissibilityError("averaged b*h is not positive");
    return h;
  }

  MatrixT quasilinear_matrix(const Hatted& hat, Direction dir) const {
    if (dir == Direction::y) {
      Hatted sw = hat;
      std::swap(sw.u, sw.v);
      MatrixT a = quasilinear_matrix(sw, Direction::x);
      std::swap(a[1], a[2]);
      for (auto& row : a) std::swap(row[1], row[2]);
      return a;
    }
    const double h = hat.h, u = hat.u, v = hat.v, b = hat.b;
    MatrixT a;
    a[0] = {0.0, 1.0, 0.0, 0.0};
    a[1] = {0.5 * b * h - u * u, 2.0 * u, 0.0, 0.5 * h};
    a[2] = {-u * v, v, u, 0.0};
    a[3] = {-b * u, b, 0.0, u};
    return a;
  }

  Eigensystem<4> eigensystem_from_hatted(const Hatted& hat, Direction dir) const {
    if (dir == Direction::y) {
      Hatted sw = hat;
      std::swap(sw.u, sw.v);
      Eigensystem<4> e = eigensystem_from_hatted(sw, Direction::x);
      std::swap(e.R[1], e.R[2]);
      for (auto& row : e.R_inv) std::swap(row[1], row[2]);
      return e;
    }
    const double h = hat.h, u = hat.u, v = hat.v, b = hat.b;
    const double s = std::sqrt(b * h);
    const double r = std::sqrt(b / h);
    Eigensystem<4> e;
    e.R[0] = {1.0, -1.0, 0.0, 1.0};
    e.R[1] = {u - s, -u, 0.0, u + s};
    e.R[2] = {v, 0.0, b, v};
    e.R[3] = {b, b, 0.0, b};
    for (auto& row : e.R)
      for (double& x : row) x /= b;
    e.R_inv[0] = {b + 2.0 * u * r, -2.0 * r, 0.0, 1.0};
    e.R_inv[1] = {-2.0 * b, 0.0, 0.0, 2.0};
    e.R_inv[2] = {-2.0 * v, 0.0, 4.0, -2.0 * v / b};
    e.R_inv[3] = {b - 2.0 * u * r, 2.0 * r, 0.0, 1.0};
    for (auto& row : e.R_inv)
      for (double& x : row) x *= 0.25;
    e.eigenvalues = {u - s, u, u, u + s};
    return e;
  }

  Eigensystem<4> eigensystem(const StateT& left, const StateT& right, Direction dir) const {
    return eigensystem_from_hatted(hatted(left, right), dir);
  }

 private:
  StateT invert(double m, double rhs, double b, double ut, double h_guess, Direction dir) const {
    const double h = solve_thickness(m, b, rhs, h_guess > h_min ? h_guess : 1.0);
    if (!(h > h_min)) throw ReconstructionError("recovered thickness below h_min");
    StateT s;
    s[0] = h;
    s[normal_index(dir)] = m;
    s[transverse_index(dir)] = h * ut;
    s[3] = h * b;
    return s;
  }
};

using Trsw1D = Trsw<1>;
using Trsw2D = Trsw<2>;

}  // namespace pccu

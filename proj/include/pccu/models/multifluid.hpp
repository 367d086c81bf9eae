#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "../error.hpp"
#include "../flux.hpp"
#include "../global_flux.hpp"
#include "../state.hpp"

namespace pccu {

/// Primitive description of a multifluid state. `v` is ignored in 1-D.
struct MultifluidPrimitive {
  double rho = 1.0;
  double u = 0.0;
  double v = 0.0;
  double p = 1.0;
  double gamma = 1.4;
  double pi_inf = 0.0;
};

/// Gamma-based compressible multifluid system with a stiffened-gas EOS.
///
/// Conservative variables are (rho, rho u, [rho v,] E, Gamma, Pi) with
/// Gamma = 1/(gamma-1) and Pi = gamma pi_inf/(gamma-1). The last two obey
/// Gamma_t + u Gamma_x = 0, i.e. B = diag(0, ..., 0, -u, -u) in the
/// U_t + F_x = B U_x form, which is what makes dF/dU - B equal the
/// quasilinear matrix used for the characteristic decomposition.
template <int Dim>
class Multifluid {
  static_assert(Dim == 1 || Dim == 2);

 public:
  static constexpr int dimension = Dim;
  static constexpr int ncomp = Dim + 4;
  using StateT = State<ncomp>;
  using MatrixT = Matrix<ncomp>;

  static constexpr int i_rho = 0;
  static constexpr int i_mx = 1;
  static constexpr int i_energy = Dim + 1;
  static constexpr int i_gamma = Dim + 2;
  static constexpr int i_pi = Dim + 3;

  static constexpr double rho_floor = 1e-12;

  /// Averaged quantities at a face, built from the two neighbouring cell
  /// averages: arithmetic means of gamma, pi_inf, rho, u, v, p, and c from
  /// the averaged values.
  struct Hatted {
    double rho, u, v, p, gamma, pi_inf, c;
  };

  std::string name() const { return Dim == 1 ? "multifluid-1d" : "multifluid-2d"; }
  Direction axis_1d() const { return Direction::x; }

  int normal_momentum_index(Direction dir) const {
    if constexpr (Dim == 1) return i_mx;
    return dir == Direction::x ? 1 : 2;
  }
  std::vector<int> wall_components(Direction dir) const { return {normal_momentum_index(dir)}; }
  /// Components with no W contribution (mass, momenta, energy).
  std::vector<int> conserved_components() const {
    std::vector<int> c;
    for (int i = 0; i <= i_energy; ++i) c.push_back(i);
    return c;
  }

  static double gamma_of(double big_gamma) { return 1.0 / big_gamma + 1.0; }
  static double pi_inf_of(double big_gamma, double big_pi) { return big_pi / (big_gamma + 1.0); }

  StateT conservative(const MultifluidPrimitive& w) const {
    StateT u{};
    const double big_gamma = 1.0 / (w.gamma - 1.0);
    const double kinetic = 0.5 * w.rho * (w.u * w.u + (Dim == 2 ? w.v * w.v : 0.0));
    u[i_rho] = w.rho;
    u[i_mx] = w.rho * w.u;
    if constexpr (Dim == 2) u[2] = w.rho * w.v;
    u[i_energy] = (w.p + w.gamma * w.pi_inf) / (w.gamma - 1.0) + kinetic;
    u[i_gamma] = big_gamma;
    u[i_pi] = w.gamma * w.pi_inf / (w.gamma - 1.0);
    return u;
  }

  /// Primitive variables without admissibility checks.
  MultifluidPrimitive primitive_unchecked(const StateT& s) const {
    MultifluidPrimitive w;
    w.rho = s[i_rho];
    w.u = s[i_mx] / s[i_rho];
    w.v = Dim == 2 ? s[2] / s[i_rho] : 0.0;
    w.gamma = gamma_of(s[i_gamma]);
    w.pi_inf = pi_inf_of(s[i_gamma], s[i_pi]);
    w.p = (w.gamma - 1.0) * (s[i_energy] - 0.5 * w.rho * (w.u * w.u + w.v * w.v)) -
          w.gamma * w.pi_inf;
    return w;
  }

  bool is_admissible(const StateT& s) const {
    if (!all_finite<ncomp>(s)) return false;
    if (!(s[i_rho] > rho_floor) || !(s[i_gamma] > 0.0)) return false;
    const MultifluidPrimitive w = primitive_unchecked(s);
    return w.p + w.pi_inf > 0.0;
  }

  MultifluidPrimitive primitive(const StateT& s) const {
    if (!all_finite<ncomp>(s)) throw AdmissibilityError("non-finite multifluid state");
    if (!(s[i_rho] > rho_floor))
      throw AdmissibilityError("density below floor: rho=" + std::to_string(s[i_rho]));
    if (!(s[i_gamma] > 0.0))
      throw AdmissibilityError("non-positive Gamma=" + std::to_string(s[i_gamma]));
    const MultifluidPrimitive w = primitive_unchecked(s);
    if (!(w.p + w.pi_inf > 0.0))
      throw AdmissibilityError("loss of hyperbolicity: p + pi_inf=" +
                               std::to_string(w.p + w.pi_inf));
    return w;
  }

  double sound_speed(const StateT& s) const {
    const MultifluidPrimitive w = primitive(s);
    return std::sqrt(w.gamma * (w.p + w.pi_inf) / w.rho);
  }

  StateT flux(const StateT& s, Direction dir) const {
    const MultifluidPrimitive w = primitive_unchecked(s);
    const int n = normal_momentum_index(dir);
    const double un = s[n] / s[i_rho];
    StateT f{};
    f[i_rho] = s[n];
    for (int c = 1; c <= Dim; ++c) f[c] = s[c] * un;
    f[n] += w.p;
    f[i_energy] = un * (s[i_energy] + w.p);
    f[i_gamma] = 0.0;
    f[i_pi] = 0.0;
    return f;
  }

  MatrixT nonconservative_matrix(const StateT& s, Direction dir) const {
    MatrixT b{};
    for (auto& row : b) row.fill(0.0);
    const double un = s[normal_momentum_index(dir)] / s[i_rho];
    b[i_gamma][i_gamma] = -un;
    b[i_pi][i_pi] = -un;
    return b;
  }

  StateT nonconservative_product(const StateT& mid, const StateT& jump, Direction dir) const {
    StateT r = zero_state<ncomp>();
    const double un = mid[normal_momentum_index(dir)] / mid[i_rho];
    r[i_gamma] = -un * jump[i_gamma];
    r[i_pi] = -un * jump[i_pi];
    return r;
  }

  StateT source_integral(const StateT&, const StateT&, const CellGeometry&, Direction) const {
    return zero_state<ncomp>();
  }

  /// Ascending eigenvalues of dF/dU - B: (u_n - c, u_n, ..., u_n, u_n + c).
  StateT eigenvalues(const StateT& s, Direction dir) const {
    const MultifluidPrimitive w = primitive(s);
    const double c = std::sqrt(w.gamma * (w.p + w.pi_inf) / w.rho);
    const double un = dir == Direction::x ? w.u : w.v;
    StateT lam;
    lam.fill(un);
    lam[0] = un - c;
    lam[ncomp - 1] = un + c;
    return lam;
  }

  Hatted hatted(const StateT& left, const StateT& right) const {
    const MultifluidPrimitive a = primitive_unchecked(left);
    const MultifluidPrimitive b = primitive_unchecked(right);
    Hatted h;
    h.rho = 0.5 * (a.rho + b.rho);
    h.u = 0.5 * (a.u + b.u);
    h.v = 0.5 * (a.v + b.v);
    h.p = 0.5 * (a.p + b.p);
    h.gamma = 0.5 * (a.gamma + b.gamma);
    h.pi_inf = 0.5 * (a.pi_inf + b.pi_inf);
    const double c2 = h.gamma * (h.p + h.pi_inf) / h.rho;
    if (!(c2 > 0.0) || !std::isfinite(c2))
      throw AdmissibilityError("averaged sound speed squared is not positive: " +
                               std::to_string(c2));
    h.c = std::sqrt(c2);
    return h;
  }

  /// The quasilinear matrix dF/dU - B written in terms of (gamma, u, v, p, c),
  /// evaluated at averaged quantities.
  MatrixT quasilinear_matrix(const Hatted& h, Direction dir) const {
    if (dir == Direction::y) {
      if constexpr (Dim == 1) throw ConfigError("1-D multifluid has no y-direction");
      Hatted sw = h;
      std::swap(sw.u, sw.v);
      return swap_momenta(quasilinear_matrix(sw, Direction::x));
    }
    const double g = h.gamma, u = h.u, v = h.v, p = h.p, c = h.c;
    MatrixT a{};
    for (auto& row : a) row.fill(0.0);
    if constexpr (Dim == 1) {
      a[0] = {0.0, 1.0, 0.0, 0.0, 0.0};
      a[1] = {0.5 * (g - 3.0) * u * u, (3.0 - g) * u, g - 1.0, (1.0 - g) * p, 1.0 - g};
      a[2] = {u * c * c / (1.0 - g) + (0.5 * g - 1.0) * u * u * u,
              c * c / (g - 1.0) + (1.5 - g) * u * u, g * u, (1.0 - g) * p * u, (1.0 - g) * u};
      a[3] = {0.0, 0.0, 0.0, u, 0.0};
      a[4] = {0.0, 0.0, 0.0, 0.0, u};
    } else {
      const double q2 = u * u + v * v;
      a[0] = {0.0, 1.0, 0.0, 0.0, 0.0, 0.0};
      a[1] = {0.5 * (g - 3.0) * u * u + 0.5 * (g - 1.0) * v * v,
              (3.0 - g) * u,
              (1.0 - g) * v,
              g - 1.0,
              (1.0 - g) * p,
              1.0 - g};
      a[2] = {-u * v, v, u, 0.0, 0.0, 0.0};
      a[3] = {u * c * c / (1.0 - g) + (0.5 * g - 1.0) * u * q2,
              c * c / (g - 1.0) + (1.5 - g) * u * u + 0.5 * v * v,
              (1.0 - g) * u * v,
              g * u,
              (1.0 - g) * p * u,
              (1.0 - g) * u};
      a[4] = {0.0, 0.0, 0.0, 0.0, u, 0.0};
      a[5] = {0.0, 0.0, 0.0, 0.0, 0.0, u};
    }
    return a;
  }

  Eigensystem<ncomp> eigensystem_from_hatted(const Hatted& h, Direction dir) const {
    if (dir == Direction::y) {
      if constexpr (Dim == 1) throw ConfigError("1-D multifluid has no y-direction");
      Hatted sw = h;
      std::swap(sw.u, sw.v);
      Eigensystem<ncomp> e = eigensystem_from_hatted(sw, Direction::x);
      std::swap(e.R[1], e.R[2]);
      for (auto& row : e.R_inv) std::swap(row[1], row[2]);
      return e;
    }
    const double g = h.gamma, u = h.u, v = h.v, p = h.p, c = h.c;
    const double gm1 = g - 1.0;
    const double c2 = c * c;
    const double s = 1.0 / (2.0 * c2);
    Eigensystem<ncomp> e;
    if constexpr (Dim == 1) {
      const double enth = c2 / gm1 + 0.5 * u * u;
      e.R[0] = {1.0, 1.0, 0.0, 0.0, 1.0};
      e.R[1] = {u - c, u, 0.0, 0.0, u + c};
      e.R[2] = {enth - u * c, 0.5 * u * u, p, 0.0, enth + u * c};
      e.R[3] = {0.0, 0.0, 1.0, -1.0, 0.0};
      e.R[4] = {0.0, 0.0, 0.0, p, 0.0};

      e.R_inv[0] = {0.5 * gm1 * u * u + u * c, -c - gm1 * u, gm1, -gm1 * p, -gm1};
      e.R_inv[1] = {2.0 * c2 - gm1 * u * u, 2.0 * gm1 * u, -2.0 * gm1, 2.0 * gm1 * p, 2.0 * gm1};
      e.R_inv[2] = {0.0, 0.0, 0.0, 2.0 * c2, 2.0 * c2 / p};
      e.R_inv[3] = {0.0, 0.0, 0.0, 0.0, 2.0 * c2 / p};
      e.R_inv[4] = {0.5 * gm1 * u * u - u * c, c - gm1 * u, gm1, -gm1 * p, -gm1};
      e.eigenvalues = {u - c, u, u, u, u + c};
    } else {
      const double q2 = u * u + v * v;
      const double enth = c2 / gm1 + 0.5 * q2;
      e.R[0] = {1.0, 1.0, 0.0, 0.0, 0.0, 1.0};
      e.R[1] = {u - c, u, 0.0, 0.0, 0.0, u + c};
      e.R[2] = {v, v, 1.0, 0.0, 0.0, v};
      e.R[3] = {enth - u * c, 0.5 * q2, v, p, 0.0, enth + u * c};
      e.R[4] = {0.0, 0.0, 0.0, 1.0, 1.0, 0.0};
      e.R[5] = {0.0, 0.0, 0.0, 0.0, -p, 0.0};

      e.R_inv[0] = {0.5 * gm1 * q2 + u * c, -c - gm1 * u, -gm1 * v, gm1, -gm1 * p, -gm1};
      e.R_inv[1] = {2.0 * c2 - gm1 * q2, 2.0 * gm1 * u, 2.0 * gm1 * v,
                    -2.0 * gm1, 2.0 * gm1 * p, 2.0 * gm1};
      e.R_inv[2] = {-2.0 * c2 * v, 0.0, 2.0 * c2, 0.0, 0.0, 0.0};
      e.R_inv[3] = {0.0, 0.0, 0.0, 0.0, 2.0 * c2, 2.0 * c2 / p};
      e.R_inv[4] = {0.0, 0.0, 0.0, 0.0, 0.0, -2.0 * c2 / p};
      e.R_inv[5] = {0.5 * gm1 * q2 - u * c, c - gm1 * u, -gm1 * v, gm1, -gm1 * p, -gm1};
      e.eigenvalues = {u - c, u, u, u, u, u + c};
    }
    for (auto& row : e.R_inv)
      for (double& x : row) x *= s;
    return e;
  }

  Eigensystem<ncomp> eigensystem(const StateT& left, const StateT& right, Direction dir) const {
    return eigensystem_from_hatted(hatted(left, right), dir);
  }

 private:
  static MatrixT swap_momenta(MatrixT a) {
    std::swap(a[1], a[2]);
    for (auto& row : a) std::swap(row[1], row[2]);
    return a;
  }
};

using Multifluid1D = Multifluid<1>;
using Multifluid2D = Multifluid<2>;

}  // namespace pccu

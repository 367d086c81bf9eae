#pragma once

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "state.hpp"

namespace pccu {

/// Default desingularization constant for the upwinding coefficients.
inline constexpr double kDefaultEps0 = 1e-18;

/// Right eigenvectors (columns of R), their inverse, and the eigenvalues in
/// ascending order matching the column order.
template <int D>
struct Eigensystem {
  Matrix<D> R = identity_matrix<D>();
  Matrix<D> R_inv = identity_matrix<D>();
  State<D> eigenvalues = zero_state<D>();
  bool identity = false;

  static Eigensystem trivial() {
    Eigensystem e;
    e.identity = true;
    return e;
  }
};

/// Fieldwise one-sided speeds and the global bounds a^+ >= 0 >= a^-.
template <int D>
struct LocalSpeeds {
  State<D> lambda_plus = zero_state<D>();
  State<D> lambda_minus = zero_state<D>();
  double a_plus = 0.0;
  double a_minus = 0.0;

  double max_abs() const { return std::max(a_plus, -a_minus); }
};

/// Diagonal upwinding weights per characteristic field.
template <int D>
struct PMQ {
  State<D> p = zero_state<D>();
  State<D> m = zero_state<D>();
  State<D> q = zero_state<D>();

  /// max_i |p_i + m_i - 1|
  double sum_defect() const {
    double d = 0.0;
    for (int i = 0; i < D; ++i) d = std::max(d, std::fabs(p[i] + m[i] - 1.0));
    return d;
  }
};

enum class SchemeVariant { pccu, lcd_pccu };

inline const char* to_string(SchemeVariant v) { return v == SchemeVariant::pccu ? "pccu" : "lcd"; }

/// Speeds from the model's ascending eigenvalues at both one-sided states.
/// Throws if either state is outside the model's hyperbolic region.
template <int D, class Model>
LocalSpeeds<D> local_speeds(const Model& model, const State<D>& u_minus, const State<D>& u_plus,
                            Direction dir) {
  const State<D> lm = model.eigenvalues(u_minus, dir);
  const State<D> lp = model.eigenvalues(u_plus, dir);
  LocalSpeeds<D> s;
  for (int i = 0; i < D; ++i) {
    s.lambda_plus[i] = std::max({lm[i], lp[i], 0.0});
    s.lambda_minus[i] = std::min({lm[i], lp[i], 0.0});
  }
  s.a_plus = std::max({lm[D - 1], lp[D - 1], 0.0});
  s.a_minus = std::min({lm[0], lp[0], 0.0});
  return s;
}

template <int D>
PMQ<D> pmq_lcd(const LocalSpeeds<D>& s, double eps0 = kDefaultEps0) {
  PMQ<D> r;
  const double a_gap = s.a_plus - s.a_minus;
  for (int i = 0; i < D; ++i) {
    const double gap = s.lambda_plus[i] - s.lambda_minus[i];
    if (gap > eps0) {
      r.p[i] = s.lambda_plus[i] / gap;
      r.m[i] = -s.lambda_minus[i] / gap;
      r.q[i] = s.lambda_plus[i] * s.lambda_minus[i] / gap;
    } else if (a_gap > eps0) {
      r.p[i] = s.a_plus / a_gap;
      r.m[i] = -s.a_minus / a_gap;
      r.q[i] = s.a_plus * s.a_minus / a_gap;
    } else {
      r.p[i] = 0.5;
      r.m[i] = 0.5;
      r.q[i] = 0.0;
    }
  }
  return r;
}

template <int D>
PMQ<D> pmq_cu(const LocalSpeeds<D>& s, double eps0 = kDefaultEps0) {
  PMQ<D> r;
  const double a_gap = s.a_plus - s.a_minus;
  double p = 0.5, m = 0.5, q = 0.0;
  if (a_gap > eps0) {
    p = s.a_plus / a_gap;
    m = -s.a_minus / a_gap;
    q = s.a_plus * s.a_minus / a_gap;
  }
  r.p.fill(p);
  r.m.fill(m);
  r.q.fill(q);
  return r;
}

/// R diag(p) R^{-1} K^- + R diag(m) R^{-1} K^+ + R diag(q) R^{-1} (U^+ - U^-),
/// with U^\pm the breve (steady-state consistent) values.
template <int D>
State<D> assemble_flux(const Eigensystem<D>& eig, const PMQ<D>& w, const State<D>& k_minus,
                       const State<D>& k_plus, const State<D>& u_minus, const State<D>& u_plus) {
  const State<D> jump = u_plus - u_minus;
  if (eig.identity) {
    State<D> f;
    for (int i = 0; i < D; ++i) f[i] = w.p[i] * k_minus[i] + w.m[i] * k_plus[i] + w.q[i] * jump[i];
    return f;
  }
  const State<D> cm = matvec<D>(eig.R_inv, k_minus);
  const State<D> cp = matvec<D>(eig.R_inv, k_plus);
  const State<D> cj = matvec<D>(eig.R_inv, jump);
  State<D> z;
  for (int i = 0; i < D; ++i) z[i] = w.p[i] * cm[i] + w.m[i] * cp[i] + w.q[i] * cj[i];
  return matvec<D>(eig.R, z);
}

/// Textbook central-upwind flux, used as a cross-check of assemble_flux
/// with CU weights.
template <int D>
State<D> classical_cu_flux(double a_plus, double a_minus, const State<D>& k_minus,
                           const State<D>& k_plus, const State<D>& u_minus, const State<D>& u_plus,
                           double eps0 = kDefaultEps0) {
  State<D> f;
  const double gap = a_plus - a_minus;
  for (int i = 0; i < D; ++i) {
    if (gap > eps0)
      f[i] = (a_plus * k_minus[i] - a_minus * k_plus[i]) / gap +
             a_plus * a_minus / gap * (u_plus[i] - u_minus[i]);
    else
      f[i] = 0.5 * (k_minus[i] + k_plus[i]);
  }
  return f;
}

}  // namespace pccu

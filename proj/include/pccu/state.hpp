#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace pccu {

// Element-wise arithmetic is templated on the std::array extent so it is
// found by deduction; everything else takes the component count explicitly.

/// Fixed-size state vector with d components.
template <int D>
using State = std::array<double, D>;

/// Row-major d x d matrix.
template <int D>
using Matrix = std::array<std::array<double, D>, D>;

enum class Direction { x = 0, y = 1 };

inline const char* to_string(Direction dir) { return dir == Direction::x ? "x" : "y"; }

template <int D>
constexpr State<D> zero_state() {
  State<D> s{};
  s.fill(0.0);
  return s;
}

template <int D>
constexpr Matrix<D> identity_matrix() {
  Matrix<D> m{};
  for (int i = 0; i < D; ++i) {
    m[i].fill(0.0);
    m[i][i] = 1.0;
  }
  return m;
}

template <std::size_t N>
std::array<double, N> operator+(const std::array<double, N>& a, const std::array<double, N>& b) {
  std::array<double, N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + b[i];
  return r;
}

template <std::size_t N>
std::array<double, N> operator-(const std::array<double, N>& a, const std::array<double, N>& b) {
  std::array<double, N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = a[i] - b[i];
  return r;
}

template <std::size_t N>
std::array<double, N> operator*(double s, const std::array<double, N>& a) {
  std::array<double, N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = s * a[i];
  return r;
}

template <int D>
State<D> midpoint(const State<D>& a, const State<D>& b) {
  State<D> r;
  for (int i = 0; i < D; ++i) r[i] = 0.5 * (a[i] + b[i]);
  return r;
}

template <int D>
State<D> matvec(const Matrix<D>& m, const State<D>& v) {
  State<D> r;
  for (int i = 0; i < D; ++i) {
    double acc = 0.0;
    for (int j = 0; j < D; ++j) acc += m[i][j] * v[j];
    r[i] = acc;
  }
  return r;
}

template <int D>
Matrix<D> matmul(const Matrix<D>& a, const Matrix<D>& b) {
  Matrix<D> r{};
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) {
      double acc = 0.0;
      for (int k = 0; k < D; ++k) acc += a[i][k] * b[k][j];
      r[i][j] = acc;
    }
  return r;
}

template <int D>
double max_abs(const State<D>& v) {
  double m = 0.0;
  for (double x : v) m = std::fmax(m, std::fabs(x));
  return m;
}

template <int D>
double max_abs(const Matrix<D>& a) {
  double m = 0.0;
  for (const auto& row : a)
    for (double x : row) m = std::fmax(m, std::fabs(x));
  return m;
}

template <int D>
bool all_finite(const State<D>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace pccu

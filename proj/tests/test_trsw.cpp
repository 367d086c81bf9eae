#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <random>

#include "pccu/models/trsw.hpp"

using namespace pccu;

namespace {

std::mt19937 rng(5);

double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

TrswPrimitive random_primitive() {
  return {uniform(0.1, 5.0), uniform(-3.0, 3.0), uniform(-3.0, 3.0), uniform(0.2, 5.0)};
}

Eigen::Matrix4d to_eigen(const Matrix<4>& a) {
  Eigen::Matrix4d m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = a[r][c];
  return m;
}

Eigen::Matrix4d numerical_jacobian(const Trsw2D& model, const State<4>& u, Direction dir) {
  Eigen::Matrix4d j;
  for (int c = 0; c < 4; ++c) {
    const double h = 1e-6 * std::max(1.0, std::fabs(u[c]));
    State<4> up = u, um = u;
    up[c] += h;
    um[c] -= h;
    const State<4> fp = model.flux(up, dir), fm = model.flux(um, dir);
    for (int r = 0; r < 4; ++r) j(r, c) = (fp[r] - fm[r]) / (2.0 * h);
  }
  return j;
}

}  // namespace

TEST(TrswThickness, RestStateHasClosedForm) {
  EXPECT_NEAR(solve_thickness(0.0, 2.0, 4.0, 1.0), 2.0, 1e-15);
}

TEST(TrswThickness, PicksRootNearestGuess) {
  const double b = 1.0, m = 1.0;
  // h = 0.5 (supercritical) and the matching subcritical root share rhs
  const double rhs = m * m / 0.5 + 0.5 * b * 0.25;
  const double super = solve_thickness(m, b, rhs, 0.45);
  EXPECT_NEAR(super, 0.5, 1e-12);
  const double sub = solve_thickness(m, b, rhs, 3.0);
  EXPECT_GT(sub, std::cbrt(m * m / b));
  EXPECT_NEAR(m * m / sub + 0.5 * b * sub * sub, rhs, 1e-12 * rhs);
}

TEST(TrswThickness, NoRootBelowCritical) {
  const double b = 1.0, m = 1.0, hc = 1.0;
  const double rmin = m * m / hc + 0.5 * b * hc * hc;
  EXPECT_THROW(solve_thickness(m, b, 0.99 * rmin, 1.0), ReconstructionError);
  EXPECT_THROW(solve_thickness(m, b, -1.0, 1.0), ReconstructionError);
  EXPECT_THROW(solve_thickness(m, -1.0, 1.0, 1.0), ReconstructionError);
}

// Independent bisection for the root of m^2/h + b h^2/2 = rhs on one side of hc.
double bisect_root(double m, double b, double rhs, double lo, double hi) {
  auto f = [&](double h) { return m * m / h + 0.5 * b * h * h - rhs; };
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) > 0.0) == (f(lo) > 0.0)) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

TEST(TrswThickness, RandomRoundTripReturnsNearestRoot) {
  for (int n = 0; n < 100000; ++n) {
    const TrswPrimitive w = random_primitive();
    const double m = w.h * w.u;
    const double rhs = m * m / w.h + 0.5 * w.b * w.h * w.h;
    const double guess = w.h * uniform(0.98, 1.02);
    const double h = solve_thickness(m, w.b, rhs, guess);
    if (m == 0.0) {
      EXPECT_NEAR(h, w.h, 1e-12 * w.h);
      continue;
    }
    const double hc = std::cbrt(m * m / w.b);
    const double hi = std::max(1e3, 10.0 * w.h);
    const double super = bisect_root(m, w.b, rhs, std::min(1e-12, 0.5 * hc), hc);
    const double sub = bisect_root(m, w.b, rhs, hc, hi);
    const double nearest = std::fabs(super - guess) < std::fabs(sub - guess) ? super : sub;
    // near hc the two roots merge and only sqrt(eps) accuracy is attainable
    const double conditioning = 1e-7 * std::sqrt(rhs / w.b);
    EXPECT_NEAR(h, nearest, 1e-9 * nearest + conditioning);
    EXPECT_EQ(h > hc, nearest > hc);
    EXPECT_NEAR(m * m / h + 0.5 * w.b * h * h, rhs, 1e-12 * rhs);
    // the true thickness is recovered whenever it is the nearer root
    if (std::fabs(w.h - guess) < 0.5 * std::fabs(sub - super)) {
      EXPECT_NEAR(h, w.h, 1e-9 * w.h);
    }
  }
}

TEST(TrswEquilibrium, RoundTrip) {
  const Trsw2D model;
  for (int n = 0; n < 1000; ++n) {
    const State<4> u = model.conservative(random_primitive());
    State<4> w = zero_state<4>();
    w[1] = uniform(-1.0, 1.0);
    w[2] = uniform(-1.0, 1.0);
    for (Direction dir : {Direction::x, Direction::y}) {
      const State<4> e = model.to_equilibrium(u, w, dir);
      const State<4> back = model.from_equilibrium(e, w, u, dir);
      for (int c = 0; c < 4; ++c) EXPECT_NEAR(back[c], u[c], 1e-9 * (1.0 + std::fabs(u[c])));
    }
  }
}

TEST(TrswEquilibrium, GlobalFluxFromEMatchesFluxMinusW) {
  const Trsw2D model;
  for (int n = 0; n < 100; ++n) {
    const State<4> u = model.conservative(random_primitive());
    State<4> w = zero_state<4>();
    w[1] = uniform(-1.0, 1.0);
    w[2] = uniform(-1.0, 1.0);
    for (Direction dir : {Direction::x, Direction::y}) {
      const State<4> k = model.global_flux_from_equilibrium(model.to_equilibrium(u, w, dir), dir);
      const State<4> f = model.flux(u, dir);
      const int nrm = dir == Direction::x ? 1 : 2;
      for (int c = 0; c < 4; ++c)
        EXPECT_NEAR(k[c], f[c] - (c == nrm ? w[c] : 0.0), 1e-12 * (1.0 + std::fabs(f[c])));
    }
  }
}

TEST(TrswFlux, QuasilinearMatrixIsFluxJacobian) {
  const Trsw2D model;
  for (int n = 0; n < 200; ++n) {
    const State<4> u = model.conservative(random_primitive());
    for (Direction dir : {Direction::x, Direction::y}) {
      const Eigen::Matrix4d a = to_eigen(model.quasilinear_matrix(model.hatted(u, u), dir));
      const Eigen::Matrix4d j = numerical_jacobian(model, u, dir);
      EXPECT_LE((a - j).cwiseAbs().maxCoeff(), 1e-6 * std::max(1.0, a.cwiseAbs().maxCoeff()));
    }
  }
}

TEST(TrswFlux, SourceSigns) {
  const Trsw2D model;
  const State<4> u = model.conservative({2.0, 1.0, 3.0, 0.5});
  const State<4> sx = model.source(u, 0.1, 2.0, Direction::x);
  const State<4> sy = model.source(u, 0.1, 2.0, Direction::y);
  EXPECT_NEAR(sx[1], 2.0 * u[2] - u[3] * 0.1, 1e-15);
  EXPECT_NEAR(sy[2], -2.0 * u[1] - u[3] * 0.1, 1e-15);
  EXPECT_EQ(sx[0], 0.0);
  EXPECT_EQ(sx[3], 0.0);
}

TEST(TrswEigensystem, ClosedFormsAgainstOracle) {
  const Trsw2D model;
  for (Direction dir : {Direction::x, Direction::y}) {
    for (int n = 0; n < 1000; ++n) {
      const State<4> a = model.conservative(random_primitive());
      const State<4> b = model.conservative(random_primitive());
      const auto hat = model.hatted(a, b);
      const Eigensystem<4> e = model.eigensystem_from_hatted(hat, dir);
      const Eigen::Matrix4d A = to_eigen(model.quasilinear_matrix(hat, dir));
      const Eigen::Matrix4d R = to_eigen(e.R), Ri = to_eigen(e.R_inv);
      const Eigen::Matrix4d L = Eigen::Vector4d(e.eigenvalues[0], e.eigenvalues[1],
                                                e.eigenvalues[2], e.eigenvalues[3])
                                    .asDiagonal();
      EXPECT_LE((A * R - R * L).cwiseAbs().maxCoeff(), 1e-11);
      EXPECT_LE((R * Ri - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff(), 1e-11);
      Eigen::EigenSolver<Eigen::Matrix4d> es(A);
      std::vector<double> num(4);
      for (int i = 0; i < 4; ++i) num[i] = es.eigenvalues()[i].real();
      std::sort(num.begin(), num.end());
      for (int i = 0; i < 4; ++i) EXPECT_NEAR(num[i], e.eigenvalues[i], 1e-9);
    }
  }
}

TEST(TrswEigensystem, OneDimensionalUsesYAxis) {
  const Trsw1D model;
  EXPECT_EQ(model.axis_1d(), Direction::y);
  const State<4> u = model.conservative({1.0, 0.5, 2.0, 4.0});
  const State<4> lam = model.eigenvalues(u, Direction::y);
  EXPECT_NEAR(lam[0], 2.0 - 2.0, 1e-15);
  EXPECT_NEAR(lam[3], 2.0 + 2.0, 1e-15);
}

TEST(TrswAdmissibility, RejectsDryAndNegativeBuoyancy) {
  const Trsw2D model;
  EXPECT_FALSE(model.is_admissible({0.0, 0.0, 0.0, 1.0}));
  EXPECT_FALSE(model.is_admissible({1.0, 0.0, 0.0, -1.0}));
  EXPECT_THROW(model.eigenvalues({-1.0, 0.0, 0.0, 1.0}, Direction::x), AdmissibilityError);
}

TEST(Bathymetry, FlatAndCoriolis) {
  Bathymetry b;
  EXPECT_TRUE(b.flat());
  EXPECT_EQ(b.z(1.0, 2.0), 0.0);
  b.f0 = 1.0;
  b.beta = 0.5;
  EXPECT_DOUBLE_EQ(b.coriolis(4.0), 3.0);
}

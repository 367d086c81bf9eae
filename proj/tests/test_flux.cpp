#include <gtest/gtest.h>

#include <random>

#include "pccu/flux.hpp"
#include "pccu/models/advection.hpp"
#include "pccu/models/multifluid.hpp"
#include "pccu/models/trsw.hpp"

using namespace pccu;

namespace {

std::mt19937 rng(2024);

double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

State<5> random_gas() {
  const Multifluid1D model;
  const double gamma = uniform(1.1, 5.0);
  return model.conservative({uniform(0.1, 5.0), uniform(-3.0, 3.0), 0.0, uniform(0.1, 10.0), gamma,
                             uniform(0.0, 100.0)});
}

LocalSpeeds<3> random_speeds() {
  LocalSpeeds<3> s;
  for (int i = 0; i < 3; ++i) {
    const double a = uniform(-2.0, 2.0), b = uniform(-2.0, 2.0);
    s.lambda_plus[i] = std::max({a, b, 0.0});
    s.lambda_minus[i] = std::min({a, b, 0.0});
  }
  s.a_plus = std::max(0.0, *std::max_element(s.lambda_plus.begin(), s.lambda_plus.end()));
  s.a_minus = std::min(0.0, *std::min_element(s.lambda_minus.begin(), s.lambda_minus.end()));
  return s;
}

}  // namespace

TEST(Pmq, BranchOneIsFieldwise) {
  LocalSpeeds<1> s;
  s.lambda_plus = {2.0};
  s.lambda_minus = {-1.0};
  s.a_plus = 3.0;
  s.a_minus = -3.0;
  const PMQ<1> w = pmq_lcd<1>(s);
  EXPECT_DOUBLE_EQ(w.p[0], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(w.m[0], 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(w.q[0], -2.0 / 3.0);
}

TEST(Pmq, BranchTwoFallsBackToGlobalSpeeds) {
  LocalSpeeds<1> s;
  s.lambda_plus = {0.0};
  s.lambda_minus = {0.0};
  s.a_plus = 1.0;
  s.a_minus = -3.0;
  const PMQ<1> w = pmq_lcd<1>(s);
  EXPECT_DOUBLE_EQ(w.p[0], 0.25);
  EXPECT_DOUBLE_EQ(w.m[0], 0.75);
  EXPECT_DOUBLE_EQ(w.q[0], -0.75);
}

TEST(Pmq, BranchThreeIsCentral) {
  LocalSpeeds<2> s;
  const PMQ<2> w = pmq_lcd<2>(s);
  const PMQ<2> c = pmq_cu<2>(s);
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(w.p[i], 0.5);
    EXPECT_EQ(w.m[i], 0.5);
    EXPECT_EQ(w.q[i], 0.0);
    EXPECT_EQ(c.p[i], 0.5);
    EXPECT_EQ(c.q[i], 0.0);
  }
}

TEST(Pmq, SumsToOneAndQNonPositive) {
  for (int n = 0; n < 10000; ++n) {
    const LocalSpeeds<3> s = random_speeds();
    for (const PMQ<3>& w : {pmq_lcd<3>(s), pmq_cu<3>(s)}) {
      EXPECT_LE(w.sum_defect(), 1e-15);
      for (int i = 0; i < 3; ++i) {
        EXPECT_LE(w.q[i], 0.0);
        EXPECT_GE(w.p[i], 0.0);
        EXPECT_GE(w.m[i], 0.0);
      }
    }
  }
}

TEST(LocalSpeedsTest, BoundsContainEveryField) {
  const Multifluid1D model;
  for (int n = 0; n < 1000; ++n) {
    const State<5> a = random_gas(), b = random_gas();
    const LocalSpeeds<5> s = local_speeds<5>(model, a, b, Direction::x);
    EXPECT_GE(s.a_plus, 0.0);
    EXPECT_LE(s.a_minus, 0.0);
    for (int i = 0; i < 5; ++i) {
      EXPECT_LE(s.lambda_plus[i], s.a_plus);
      EXPECT_GE(s.lambda_minus[i], s.a_minus);
    }
  }
}

TEST(LocalSpeedsTest, InadmissibleStateThrows) {
  const Multifluid1D model;
  State<5> bad = random_gas();
  bad[2] = -100.0;  // negative internal energy
  EXPECT_THROW(local_speeds<5>(model, bad, random_gas(), Direction::x), AdmissibilityError);
}

TEST(Assemble, IdentityPathMatchesMatrixPath) {
  Eigensystem<3> eye;  // identity matrices, generic path
  for (int n = 0; n < 1000; ++n) {
    const LocalSpeeds<3> s = random_speeds();
    const PMQ<3> w = pmq_lcd<3>(s);
    State<3> km, kp, um, up;
    for (int i = 0; i < 3; ++i) {
      km[i] = uniform(-1, 1);
      kp[i] = uniform(-1, 1);
      um[i] = uniform(-1, 1);
      up[i] = uniform(-1, 1);
    }
    const State<3> a = assemble_flux<3>(eye, w, km, kp, um, up);
    const State<3> b = assemble_flux<3>(Eigensystem<3>::trivial(), w, km, kp, um, up);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(a[i], b[i], 1e-15);
  }
}

// Rescaling the eigenvectors by any positive diagonal matrix leaves the
// assembled flux unchanged.
TEST(Assemble, InvariantUnderEigenvectorScaling) {
  const Multifluid1D model;
  for (int n = 0; n < 1000; ++n) {
    const State<5> a = random_gas(), b = random_gas();
    Eigensystem<5> e = model.eigensystem(a, b, Direction::x);
    const PMQ<5> w = pmq_lcd<5>(local_speeds<5>(model, a, b, Direction::x));
    const State<5> f0 = assemble_flux<5>(e, w, model.flux(a, Direction::x),
                                         model.flux(b, Direction::x), a, b);
    State<5> dscale;
    for (double& d : dscale) d = uniform(0.1, 10.0);
    for (int r = 0; r < 5; ++r)
      for (int c = 0; c < 5; ++c) {
        e.R[r][c] *= dscale[c];
        e.R_inv[c][r] /= dscale[c];
      }
    const State<5> f1 = assemble_flux<5>(e, w, model.flux(a, Direction::x),
                                         model.flux(b, Direction::x), a, b);
    for (int i = 0; i < 5; ++i) EXPECT_NEAR(f1[i], f0[i], 1e-9 * (1.0 + std::fabs(f0[i])));
  }
}

TEST(Assemble, ConsistentForEqualStates) {
  const Multifluid1D model;
  for (int n = 0; n < 1000; ++n) {
    const State<5> u = random_gas();
    const PMQ<5> w = pmq_lcd<5>(local_speeds<5>(model, u, u, Direction::x));
    const State<5> k = model.flux(u, Direction::x);
    const State<5> f = assemble_flux<5>(model.eigensystem(u, u, Direction::x), w, k, k, u, u);
    for (int i = 0; i < 5; ++i) EXPECT_NEAR(f[i], k[i], 1e-10 * (1.0 + std::fabs(k[i])));
  }
}

TEST(Assemble, CuWeightsReproduceClassicalCu) {
  for (int n = 0; n < 1000; ++n) {
    const LocalSpeeds<3> s = random_speeds();
    State<3> km, kp, um, up;
    for (int i = 0; i < 3; ++i) {
      km[i] = uniform(-5, 5);
      kp[i] = uniform(-5, 5);
      um[i] = uniform(-5, 5);
      up[i] = uniform(-5, 5);
    }
    const State<3> a = assemble_flux<3>(Eigensystem<3>::trivial(), pmq_cu<3>(s), km, kp, um, up);
    const State<3> b = classical_cu_flux<3>(s.a_plus, s.a_minus, km, kp, um, up);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(a[i], b[i], 1e-12 * (1.0 + std::fabs(b[i])));
  }
}

// For linear advection the LCD flux is exact upwinding.
TEST(Assemble, AdvectionLcdIsUpwind) {
  for (double speed : {1.5, -0.5}) {
    const Advection model(speed, 0.0);
    const State<1> um{2.0}, up{-1.0};
    const PMQ<1> w = pmq_lcd<1>(local_speeds<1>(model, um, up, Direction::x));
    const State<1> f = assemble_flux<1>(model.eigensystem(um, up, Direction::x), w,
                                        model.flux(um, Direction::x), model.flux(up, Direction::x),
                                        um, up);
    EXPECT_DOUBLE_EQ(f[0], speed > 0 ? speed * um[0] : speed * up[0]);
  }
}

TEST(Assemble, TrswSupersonicFaceIsUpwind) {
  const Trsw2D model;
  const State<4> a = model.conservative({1.0, 5.0, 0.3, 1.0});
  const State<4> b = model.conservative({1.1, 5.2, 0.1, 1.2});
  const LocalSpeeds<4> s = local_speeds<4>(model, a, b, Direction::x);
  EXPECT_EQ(s.a_minus, 0.0);
  const PMQ<4> w = pmq_lcd<4>(s);
  const State<4> f = assemble_flux<4>(model.eigensystem(a, b, Direction::x), w,
                                      model.flux(a, Direction::x), model.flux(b, Direction::x), a, b);
  const State<4> fa = model.flux(a, Direction::x);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(f[i], fa[i], 1e-12 * (1.0 + std::fabs(fa[i])));
}

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "pccu/global_flux.hpp"
#include "pccu/models/multifluid.hpp"
#include "pccu/models/trsw.hpp"
#include "pccu/reconstruct.hpp"

using namespace pccu;

TEST(Minmod, Cases) {
  EXPECT_EQ(minmod({2.0, 1.0, 3.0}), 1.0);
  EXPECT_EQ(minmod({-2.0, -1.0, -3.0}), -1.0);
  EXPECT_EQ(minmod({2.0, -1.0, 3.0}), 0.0);
  EXPECT_EQ(minmod({0.0, 1.0, 1.0}), 0.0);
  EXPECT_EQ(minmod({}), 0.0);
  EXPECT_EQ(minmod3(2.0, 1.0, 3.0), 1.0);
  EXPECT_EQ(minmod3(-2.0, -1.0, -3.0), -1.0);
}

TEST(Minmod, AgreesWithSpanVersionOnRandomTriples) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double a = d(rng), b = d(rng), c = d(rng);
    EXPECT_EQ(minmod3(a, b, c), minmod({a, b, c}));
  }
}

TEST(Slopes, LinearDataIsReproducedForAnyTheta) {
  std::vector<State<1>> line;
  for (int i = 0; i < 8; ++i) line.push_back({3.0 + 0.5 * i});
  for (double theta : {1.0, 1.3, 2.0}) {
    const auto s = limited_slopes<1>(std::span<const State<1>>(line), 0.5, SlopeParams{theta});
    for (int i = 1; i < 7; ++i) EXPECT_NEAR(s[i][0], 1.0, 1e-14);
    EXPECT_EQ(s[0][0], 0.0);
    EXPECT_EQ(s[7][0], 0.0);
  }
}

TEST(Slopes, ExtremumGetsZeroSlope) {
  std::vector<State<1>> line = {{0.0}, {1.0}, {2.0}, {1.0}, {0.0}};
  const auto s = limited_slopes<1>(std::span<const State<1>>(line), 1.0, SlopeParams{});
  EXPECT_EQ(s[2][0], 0.0);
}

TEST(Slopes, ThetaValidation) {
  EXPECT_THROW(SlopeParams{0.9}.validate(), ConfigError);
  EXPECT_THROW(SlopeParams{2.1}.validate(), ConfigError);
  EXPECT_NO_THROW(SlopeParams{1.3}.validate());
}

// The reconstructed face values never leave the range of the neighbouring
// cell averages (total-variation property of the minmod family).
TEST(Conservative, FaceValuesStayWithinNeighbourRange) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<State<1>> line(40);
  for (auto& c : line) c = {d(rng)};
  const auto faces = reconstruct_conservative<1>(std::span<const State<1>>(line), 0.1, SlopeParams{2.0});
  ASSERT_EQ(faces.size(), line.size() - 3);
  for (std::size_t m = 0; m < faces.size(); ++m) {
    const double a = line[m + 1][0], b = line[m + 2][0];
    const double lo = std::min({a, b, line[m][0], line[m + 3][0]});
    const double hi = std::max({a, b, line[m][0], line[m + 3][0]});
    EXPECT_GE(faces.minus[m][0], lo - 1e-14);
    EXPECT_LE(faces.minus[m][0], hi + 1e-14);
    EXPECT_GE(faces.plus[m][0], lo - 1e-14);
    EXPECT_LE(faces.plus[m][0], hi + 1e-14);
    EXPECT_EQ(faces.breve_minus[m], faces.minus[m]);
    EXPECT_EQ(faces.breve_plus[m], faces.plus[m]);
  }
}

TEST(Conservative, ConstantDataGivesConstantFaces) {
  std::vector<State<2>> line(10, State<2>{2.0, -1.0});
  const auto faces = reconstruct_conservative<2>(std::span<const State<2>>(line), 0.1, SlopeParams{});
  for (std::size_t m = 0; m < faces.size(); ++m) {
    EXPECT_EQ(faces.minus[m], line[0]);
    EXPECT_EQ(faces.plus[m], line[0]);
  }
}

TEST(Conservative, InadmissibleFaceFallsBackToFlatCell) {
  const Multifluid1D model;
  // A light fast cell next to a near-vacuum: the limited density slope
  // reaches the small neighbour while momentum and energy stay flat, so the
  // east face carries more kinetic energy than total energy.
  std::vector<State<5>> line;
  for (int i = 0; i < 3; ++i) line.push_back(model.conservative({1.0, 0.0, 0.0, 1.0, 1.4, 0.0}));
  line.push_back(model.conservative({0.1, 10.0, 0.0, 1e-3, 1.4, 0.0}));
  for (int i = 0; i < 3; ++i) line.push_back(model.conservative({1e-3, 0.0, 0.0, 1e-3, 1.4, 0.0}));
  for (const auto& c : line) ASSERT_TRUE(model.is_admissible(c));
  const auto raw = reconstruct_conservative<5>(std::span<const State<5>>(line), 0.1, SlopeParams{2.0});
  EXPECT_FALSE(model.is_admissible(raw.minus[2]));
  auto admissible = [&](const State<5>& s) { return model.is_admissible(s); };
  const auto faces = reconstruct_conservative<5>(std::span<const State<5>>(line), 0.1,
                                                 SlopeParams{2.0}, admissible);
  for (std::size_t m = 0; m < faces.size(); ++m) {
    if (model.is_admissible(line[m + 1])) {
      EXPECT_TRUE(model.is_admissible(faces.minus[m]));
    }
    if (model.is_admissible(line[m + 2])) {
      EXPECT_TRUE(model.is_admissible(faces.plus[m]));
    }
  }
  EXPECT_GT(faces.fallbacks, 0);

  ReconstructionPolicy strict;
  strict.first_order_fallback = false;
  EXPECT_THROW(reconstruct_conservative<5>(std::span<const State<5>>(line), 0.1, SlopeParams{2.0},
                                           admissible, strict),
               AdmissibilityError);
}

TEST(Conservative, TooShortLineIsRejected) {
  std::vector<State<1>> line(3, State<1>{0.0});
  EXPECT_THROW(reconstruct_conservative<1>(std::span<const State<1>>(line), 0.1, SlopeParams{}),
               ConfigError);
}

namespace {

struct Ripa {
  Trsw1D model;
  LineGeometry geo;
  std::vector<State<4>> line;
  SourceAccumulation<4> acc;
};

// The constant-pressure equilibrium: h = 2, b = 1 on the left and h = 1,
// b = 4 on the right, at rest, flat bottom, along the 1-D (y) axis.
Ripa ripa_equilibrium(int n) {
  Ripa r;
  r.geo = LineGeometry::flat(n, 0.1);
  for (int i = 0; i < n; ++i) {
    const bool left = i < n / 2;
    r.line.push_back(r.model.conservative({left ? 2.0 : 1.0, 0.0, 0.0, left ? 1.0 : 4.0}));
  }
  r.acc = accumulate_cell_sources<4>(r.model, std::span<const State<4>>(r.line), r.geo, Direction::y);
  return r;
}

}  // namespace

TEST(Equilibrium, ConstantEGivesBreveEqualOnBothSides) {
  Ripa r = ripa_equilibrium(12);
  const auto faces = reconstruct_equilibrium<4>(r.model, std::span<const State<4>>(r.line), r.acc,
                                                0.1, SlopeParams{}, Direction::y);
  EXPECT_EQ(faces.fallbacks, 0);
  for (std::size_t m = 0; m < faces.size(); ++m) {
    for (int c = 0; c < 4; ++c) EXPECT_NEAR(faces.breve_plus[m][c], faces.breve_minus[m][c], 1e-14);
    EXPECT_EQ(faces.eq_minus[m][0], 0.0);
    EXPECT_NEAR(faces.eq_minus[m][1], faces.eq_plus[m][1], 1e-14);
  }
}

TEST(Equilibrium, BreveEqualsOneSidedWhenBAndUtAgree) {
  const Trsw1D model;
  const std::size_t n = 10;
  LineGeometry geo = LineGeometry::flat(n, 0.1);
  std::vector<State<4>> line;
  for (std::size_t i = 0; i < n; ++i)
    line.push_back(model.conservative({1.0 + 0.1 * i * i, 0.2, 0.3, 2.0}));
  const auto acc = accumulate_cell_sources<4>(model, std::span<const State<4>>(line), geo, Direction::y);
  const auto faces = reconstruct_equilibrium<4>(model, std::span<const State<4>>(line), acc, 0.1,
                                                SlopeParams{}, Direction::y);
  for (std::size_t m = 0; m < faces.size(); ++m)
    for (int c = 0; c < 4; ++c) {
      EXPECT_NEAR(faces.breve_minus[m][c], faces.minus[m][c], 1e-12);
      EXPECT_NEAR(faces.breve_plus[m][c], faces.plus[m][c], 1e-12);
    }
}

TEST(Equilibrium, SmoothProfileRoundTrips) {
  const Trsw1D model;
  const std::size_t n = 16;
  LineGeometry geo = LineGeometry::flat(n, 0.05);
  std::vector<State<4>> line;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = 0.05 * i;
    line.push_back(model.conservative({1.0 + 0.2 * std::sin(s), 0.1, 0.4 * std::cos(s), 1.5 + 0.1 * s}));
  }
  const auto acc = accumulate_cell_sources<4>(model, std::span<const State<4>>(line), geo, Direction::y);
  const auto faces = reconstruct_equilibrium<4>(model, std::span<const State<4>>(line), acc, 0.05,
                                                SlopeParams{}, Direction::y);
  for (std::size_t m = 0; m < faces.size(); ++m) {
    const State<4> e = model.to_equilibrium(faces.minus[m], acc.face[m + 2], Direction::y);
    for (int c = 0; c < 4; ++c) EXPECT_NEAR(e[c], faces.eq_minus[m][c], 1e-11);
  }
}

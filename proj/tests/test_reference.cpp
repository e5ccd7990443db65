#include <cmath>
#include <cstring>

#include <gtest/gtest.h>

#include "ncshock/reference.hpp"
#include "oracles.hpp"

using namespace ncshock;

namespace {

const ModelParams kTest1(1.0, 2.0 / 3.0);

FixedGrid test1_grid() {
  return initialize({200, -0.5, 0.5}, PiecewiseConstantData::riemann({-10, -6}, {110, 9}));
}

}  // namespace

TEST(RngStream, FixedSeedGivesFixedSequence) {
  RngStream a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    EXPECT_EQ(x, b.uniform());
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
    differs |= x != c.uniform();
  }
  EXPECT_TRUE(differs);
}

TEST(RngStream, KeepsTopBitsOfTheEngine) {
  std::mt19937_64 e(1);
  const std::uint64_t first = e();
  RngStream r(1);
  EXPECT_EQ(r.uniform(), static_cast<double>(first >> 11) / 9007199254740992.0);
}

TEST(Glimm, SameSeedIsBitIdentical) {
  const RiemannSolver solver(kTest1);
  FixedGrid a = test1_grid(), b = test1_grid();
  RngStream ra(7), rb(7);
  GlimmScheme ga(solver), gb(solver);
  for (int k = 0; k < 50; ++k) {
    ga.advance(a, ra);
    gb.advance(b, rb);
  }
  EXPECT_EQ(std::memcmp(a.v.data(), b.v.data(), a.v.size() * sizeof(double)), 0);
  EXPECT_EQ(std::memcmp(a.w.data(), b.w.data(), a.w.size() * sizeof(double)), 0);
  EXPECT_EQ(a.time, b.time);
}

TEST(Glimm, KeepsSharpStatesOnlyFromTheFans) {
  const RiemannSolver solver(kTest1);
  FixedGrid g = test1_grid();
  RngStream rng(3);
  GlimmScheme glimm(solver);
  while (g.time < 0.038) glimm.advance(g, rng, 0.038 - g.time);
  for (std::size_t j = 0; j < g.n_cells(); ++j) {
    const State u = g.cell(j);
    EXPECT_TRUE(u == (State{-10, -6}) || u == (State{110, 9})) << j;
  }
}

TEST(Glimm, MeanShockPositionFollowsExactSpeed) {
  // Averaged over realizations, the sampled shock sits at -8 t.
  const RiemannSolver solver(kTest1);
  const double T = 0.038;
  double sum = 0;
  const int n_real = 40;
  for (int r = 0; r < n_real; ++r) {
    FixedGrid g = test1_grid();
    RngStream rng(100 + r);
    GlimmScheme glimm(solver);
    while (g.time < T) glimm.advance(g, rng, T - g.time);
    std::size_t k = 0;
    while (k < g.n_cells() && g.w[k] < 0) ++k;
    sum += g.cell_left(k);
  }
  const double dx = 1.0 / 200;
  EXPECT_NEAR(sum / n_real, -8.0 * T, 3 * dx);
}

TEST(Glimm, StepRespectsHalfCellCondition) {
  const RiemannSolver solver(kTest1);
  FixedGrid g = test1_grid();
  RngStream rng(1);
  GlimmScheme glimm(solver);
  for (int k = 0; k < 10; ++k) {
    const ReferenceStepInfo info = glimm.advance(g, rng);
    EXPECT_LE(info.dt * info.max_speed, 0.5 * g.dx * (1 + 1e-15));
    EXPECT_GE(info.max_speed, 8.0);
  }
}

TEST(Godunov, ConstantStateIsSteady) {
  FixedGrid g = initialize({30, 0.0, 1.0, Boundary::Periodic}, PiecewiseConstantData{{}, {{0.2, 0.7}}});
  GodunovScheme s{RiemannSolver(kTest1)};
  for (int k = 0; k < 20; ++k) s.advance(g);
  for (std::size_t j = 0; j < g.n_cells(); ++j) {
    EXPECT_DOUBLE_EQ(g.v[j], 0.2);
    EXPECT_DOUBLE_EQ(g.w[j], 0.7);
  }
}

TEST(Godunov, FluxIsPhysicalFluxOfInterfaceState) {
  // One step on a two-state grid: the interface flux is f(sample at xi = 0).
  const RiemannSolver solver(kTest1);
  FixedGrid g = initialize({2, -1.0, 1.0}, PiecewiseConstantData::riemann({6, 1}, {-10, 2}));
  const FixedGrid before = g;
  GodunovScheme s(solver);
  const ReferenceStepInfo info = s.advance(g);
  const State star = solver.sample(solver.solve({6, 1}, {-10, 2}), 0.0);
  const double fv = -oracle::sigma(1.0, star.w), fw = -star.v;
  const double fv_l = -oracle::sigma(1.0, 1.0), fw_l = -6.0;
  EXPECT_NEAR(g.v[0], before.v[0] - info.dt * (fv - fv_l) / g.dx, 1e-12);
  EXPECT_NEAR(g.w[0], before.w[0] - info.dt * (fw - fw_l) / g.dx, 1e-12);
}

TEST(Godunov, PeriodicRunConservesMass) {
  FixedGrid g = initialize({400, 0.0, 1.0, Boundary::Periodic},
                           PiecewiseConstantData{{0.3, 0.3 + 2.0 / 3.0}, {{0.3, 0.4}, {0.15, -0.2}, {0.1, 0.4}}});
  GodunovScheme s{RiemannSolver(ModelParams(0.05, 1.0))};
  double v0 = 0, w0 = 0;
  for (std::size_t j = 0; j < g.n_cells(); ++j) {
    v0 += g.v[j];
    w0 += g.w[j];
  }
  for (int k = 0; k < 500; ++k) s.advance(g);
  double v1 = 0, w1 = 0;
  for (std::size_t j = 0; j < g.n_cells(); ++j) {
    v1 += g.v[j];
    w1 += g.w[j];
  }
  EXPECT_NEAR(v1 * g.dx, v0 * g.dx, 1e-13);
  EXPECT_NEAR(w1 * g.dx, w0 * g.dx, 1e-13);
}

TEST(Godunov, Test1SmearsIntoClassicalPattern) {
  FixedGrid g = test1_grid();
  GodunovScheme s{RiemannSolver(kTest1)};
  while (g.time < 0.038) s.advance(g, 0.038 - g.time);
  int intermediate = 0;
  for (double w : g.w) intermediate += (w > -6 + 1e-3 && w < 9 - 1e-3) ? 1 : 0;
  EXPECT_GE(intermediate, 10);
}

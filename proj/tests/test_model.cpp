#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "ncshock/model.hpp"
#include "oracles.hpp"

using namespace ncshock;

TEST(ModelParams, RejectsOutOfRangeValues) {
  EXPECT_THROW(ModelParams(0.0, 0.7), std::invalid_argument);
  EXPECT_THROW(ModelParams(-1.0, 0.7), std::invalid_argument);
  EXPECT_THROW(ModelParams(1.0, 0.49), std::invalid_argument);
  EXPECT_THROW(ModelParams(1.0, 1.01), std::invalid_argument);
  EXPECT_NO_THROW(ModelParams(1.0, 0.5));
  EXPECT_NO_THROW(ModelParams(1.0, 1.0));
}

TEST(Model, StressAndSoundSpeed) {
  const ModelParams p(1.0, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(stress(p, 2.0), 10.0);
  EXPECT_DOUBLE_EQ(stress_derivative(p, 2.0), 13.0);
  EXPECT_DOUBLE_EQ(sound_speed(p, 0.0), 1.0);
}

TEST(Model, ShockSpeedIsRootOfChordSlope) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (double m : {0.05, 1.0, 2.0}) {
    const ModelParams p(m, 0.8);
    for (int i = 0; i < 1000; ++i) {
      const double a = u(rng), b = u(rng);
      EXPECT_NEAR(shock_speed(p, a, b), std::sqrt(oracle::chord(m, a, b)), 1e-12 * (1 + a * a + b * b));
    }
    EXPECT_DOUBLE_EQ(shock_speed(p, 1.5, 1.5), sound_speed(p, 1.5));
  }
}

TEST(Model, Test1ShockSpeedIsEight) {
  const ModelParams p(1.0, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(shock_speed(p, -6.0, 9.0), 8.0);
}

TEST(Model, SoundSpeedAntiderivativeMatchesQuadrature) {
  for (double m : {0.05, 1.0, 2.0}) {
    const ModelParams p(m, 1.0);
    for (double w : {-7.0, -2.5, -0.3, 0.0, 0.01, 0.8, 3.0, 10.0}) {
      const double q = oracle::sound_integral(m, w);
      EXPECT_NEAR(sound_speed_antiderivative(p, w), q, 1e-12 * std::max(1.0, std::abs(q)))
          << "m=" << m << " w=" << w;
    }
  }
}

TEST(Model, StressAntiderivativeMatchesQuadrature) {
  const ModelParams p(2.0, 1.0);
  for (double w : {-3.0, -0.5, 0.7, 4.0}) {
    const double q = w >= 0 ? oracle::simpson([](double z) { return z * z * z + 2.0 * z; }, 0, w, 1e-14)
                            : -oracle::simpson([](double z) { return z * z * z + 2.0 * z; }, w, 0, 1e-14);
    EXPECT_NEAR(stress_antiderivative(p, w), q, 1e-12 * std::max(1.0, std::abs(q)));
  }
}

TEST(Model, HugoniotCurvesSatisfyRankineHugoniot) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  const ModelParams p(1.0, 2.0 / 3.0);
  for (int i = 0; i < 1000; ++i) {
    const State l{u(rng), u(rng)};
    const double wr = u(rng);
    const State r1{hugoniot_forward_v(p, wr, l.v, l.w), wr};
    EXPECT_LT(rankine_hugoniot_residual(p, l, r1, 1), 1e-13);
    const State r{u(rng), u(rng)};
    const double wl = u(rng);
    const State l2{hugoniot_backward_v(p, wl, r.v, r.w), wl};
    EXPECT_LT(rankine_hugoniot_residual(p, l2, r, 2), 1e-13);
  }
}

TEST(Model, Test3DataIsAOneShockAndItsTwoShockCounterpart) {
  // (1, 1) and (-11, -3) with m = 2 are joined by a 1-shock of speed -3.
  const ModelParams p(2.0, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(shock_speed(p, 1.0, -3.0), 3.0);
  EXPECT_DOUBLE_EQ(hugoniot_forward_v(p, -3.0, 1.0, 1.0), -11.0);
  EXPECT_LT(rankine_hugoniot_residual(p, {1.0, 1.0}, {-11.0, -3.0}, 1), 1e-15);
  // On the 2-shock curve through (-11, -3) the left velocity at w = 1 is -23:
  // s (wL - wR) = vR - vL with s = 3.
  const double vl = hugoniot_backward_v(p, 1.0, -11.0, -3.0);
  EXPECT_DOUBLE_EQ(vl, -23.0);
  EXPECT_LT(rankine_hugoniot_residual(p, {vl, 1.0}, {-11.0, -3.0}, 2), 1e-15);
  EXPECT_GT(rankine_hugoniot_residual(p, {1.0, 1.0}, {-11.0, -3.0}, 2), 1e-3);
}

TEST(Model, KineticAndThresholdFunctions) {
  const ModelParams p(1.0, 0.75);
  EXPECT_DOUBLE_EQ(phi_natural(2.0), -1.0);
  EXPECT_DOUBLE_EQ(phi_natural_inverse(-1.0), 2.0);
  EXPECT_DOUBLE_EQ(phi_flat_inf(2.0), -2.0);
  EXPECT_DOUBLE_EQ(phi_sharp(2.0, 3.0), -5.0);
  EXPECT_DOUBLE_EQ(phi_flat(p, 4.0), -3.0);
  EXPECT_DOUBLE_EQ(phi_flat_inverse(p, -3.0), 4.0);
}

TEST(Model, ClassificationAgreesWithChordOracle) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (double m : {0.05, 1.0, 2.0}) {
    const ModelParams p(m, 1.0);
    for (int i = 0; i < 2000; ++i) {
      const double a = u(rng), b = u(rng);
      for (int family : {1, 2}) {
        const double up = family == 1 ? a : b;
        const double down = family == 1 ? b : a;
        const bool liu = oracle::liu_by_chords(m, up, down);
        const ShockClass c = classify_shock(p, a, b, family);
        // Leave a margin around the branch boundaries of the brute-force test.
        const double prod = up * down, u2 = up * up;
        if (std::abs(prod - u2) < 1e-6 || std::abs(prod + 2 * u2) < 1e-6) continue;
        EXPECT_EQ(liu, c == ShockClass::LiuClassical) << a << " " << b << " family " << family;
      }
    }
  }
}

TEST(Model, ClassificationOfKineticShocks) {
  const ModelParams p(1.0, 2.0 / 3.0);
  EXPECT_EQ(classify_shock(p, -6.0, 9.0, 1), ShockClass::Nonclassical);
  EXPECT_EQ(classify_shock(p, 9.0, -6.0, 2), ShockClass::Nonclassical);
  EXPECT_EQ(classify_shock(p, 1.0, 2.0, 1), ShockClass::LiuClassical);
  EXPECT_EQ(classify_shock(p, 1.0, -3.0, 1), ShockClass::LiuClassical);
  EXPECT_EQ(classify_shock(p, 1.0, -0.5, 1), ShockClass::NotEntropySatisfying);
}

TEST(Model, EntropyDissipationMatchesOracle) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  const ModelParams p(1.0, 2.0 / 3.0);
  for (int i = 0; i < 500; ++i) {
    const State l{u(rng), u(rng)};
    const double wr = u(rng);
    const State r{hugoniot_forward_v(p, wr, l.v, l.w), wr};
    const double d = entropy_dissipation(p, l, r, 1);
    const double o = oracle::dissipation(1.0, l, r, -shock_speed(p, l.w, wr));
    EXPECT_NEAR(d, o, 1e-9 * std::max(1.0, std::abs(o)));
    if (classify_shock(p, l.w, wr, 1) != ShockClass::NotEntropySatisfying) {
      EXPECT_LE(d, 1e-9 * std::max(1.0, std::abs(o)));
    }
  }
  // No dissipation when wR = -wL.
  const State l{0.0, 2.0};
  const State r{hugoniot_forward_v(p, -2.0, 0.0, 2.0), -2.0};
  EXPECT_NEAR(entropy_dissipation(p, l, r, 1), 0.0, 1e-12);
}

TEST(Model, EntropyDissipationRejectsNonShocks) {
  const ModelParams p(1.0, 2.0 / 3.0);
  EXPECT_THROW(entropy_dissipation(p, {0.0, 1.0}, {5.0, 2.0}, 1), NotAShockError);
}

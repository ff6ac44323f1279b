#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "shiftreg/errors.hpp"
#include "shiftreg/instances.hpp"
#include "shiftreg/rng.hpp"
#include "shiftreg/shift.hpp"

using shiftreg::Complex;
using shiftreg::FourierSequence;
using shiftreg::InstanceKind;
using shiftreg::InstanceSpec;
using shiftreg::SobolevClass;

TEST(SimulatePair, ZeroNoiseScaleReturnsInput) {
  const FourierSequence c({Complex(1, 2), Complex(-0.5, 0.25)});
  const FourierSequence cs({Complex(0, 1), Complex(3, 0)});
  const auto obs = shiftreg::simulate_pair(c, cs, 0.3, 17, 0.0);
  EXPECT_EQ(obs.y(), c);
  EXPECT_EQ(obs.y_sharp(), cs);
  EXPECT_EQ(obs.sigma(), 0.3);
}

TEST(SimulatePair, SameSeedIsBitwiseIdentical) {
  const auto c = FourierSequence::zeros(16);
  EXPECT_EQ(shiftreg::simulate_pair(c, c, 0.1, 42), shiftreg::simulate_pair(c, c, 0.1, 42));
  EXPECT_NE(shiftreg::simulate_pair(c, c, 0.1, 42), shiftreg::simulate_pair(c, c, 0.1, 43));
}

TEST(SimulatePair, SecondMomentIsTwoSigmaSquared) {
  // E|xi|^2 = 2 because Re and Im each have unit variance
  const double sigma = 0.3;
  const auto c = FourierSequence::zeros(4);
  const std::size_t seeds = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t k = 0; k < seeds; ++k) {
    const auto obs = shiftreg::simulate_pair(c, c, sigma, shiftreg::derive_stream(9, k));
    const double v = std::norm(obs.y().coeff(3));
    sum += v;
    sum2 += v * v;
  }
  const double n = static_cast<double>(seeds);
  const double mean = sum / n;
  const double se = std::sqrt((sum2 / n - mean * mean) / n);
  EXPECT_NEAR(mean, 2.0 * sigma * sigma, 3.0 * se);
}

TEST(NullInstance, MatchesFormula) {
  const FourierSequence c({Complex(1, 0), Complex(0, 0)});
  const auto [a, b] = shiftreg::make_null_instance(c, std::numbers::pi / 2);
  EXPECT_EQ(a, c);
  EXPECT_NEAR(std::abs(b.coeff(1) - Complex(0, 1)), 0.0, 1e-16);
  EXPECT_EQ(b.coeff(2), Complex(0, 0));
  const auto [a0, b0] = shiftreg::make_null_instance(c, 0.0);
  EXPECT_EQ(b0, c);
  EXPECT_THROW(shiftreg::make_null_instance(c, 2.0 * std::numbers::pi), shiftreg::InvalidInput);
}

TEST(NullInstance, PseudoDistanceVanishes) {
  InstanceSpec spec;
  spec.tau = 2.5;
  spec.J = 32;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto [c, cs] = shiftreg::make_instance(spec, seed);
    EXPECT_TRUE(shiftreg::in_sobolev_ball(c, spec.cls));
    EXPECT_LT(shiftreg::pseudo_distance(c, cs), 1e-8);
  }
}

TEST(AltInstance, SignalVsZeroHasExactDistance) {
  InstanceSpec spec;
  spec.kind = InstanceKind::signal_vs_zero;
  spec.target_distance = 0.37;
  spec.J = 8;
  const auto [c, zero] = shiftreg::make_alt_instance(spec, 3);
  EXPECT_NEAR(std::abs(c.coeff(1)), 0.37, 1e-15);
  EXPECT_EQ(zero, FourierSequence::zeros(8));
  EXPECT_NEAR(shiftreg::pseudo_distance(c, zero), 0.37, 1e-12);
}

TEST(AltInstance, TwoFrequencyReferencePair) {
  // 4 - 2 cos t + 2 cos 2t is minimal at cos t = 1/4 with value 1.75
  const FourierSequence a({Complex(1, 0), Complex(1, 0)});
  const FourierSequence b({Complex(1, 0), Complex(-1, 0)});
  EXPECT_NEAR(oracle::grid_min(a, b, 2, 1000000), 1.75, 1e-10);
  EXPECT_NEAR(shiftreg::pseudo_distance(a, b), std::sqrt(1.75), 1e-10);
}

class AltInstanceSweep : public ::testing::TestWithParam<std::tuple<InstanceKind, double>> {};

TEST_P(AltInstanceSweep, CertifiedAgainstGridOracle) {
  const auto [kind, target] = GetParam();
  InstanceSpec spec;
  spec.kind = kind;
  spec.target_distance = target;
  spec.cls = SobolevClass(1.0, 1.0);
  spec.J = 16;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto [c, cs] = shiftreg::make_alt_instance(spec, seed);
    EXPECT_TRUE(shiftreg::in_sobolev_ball(c, spec.cls));
    EXPECT_TRUE(shiftreg::in_sobolev_ball(cs, spec.cls));
    EXPECT_GE(std::sqrt(oracle::grid_min(c, cs, 16, 20000)), target - 1e-6);
  }
}

INSTANTIATE_TEST_SUITE_P(Kinds, AltInstanceSweep,
                         ::testing::Combine(::testing::Values(InstanceKind::signal_vs_zero,
                                                              InstanceKind::two_frequency),
                                            ::testing::Values(0.05, 0.3, 0.6)));

TEST(AltInstance, InfeasibleTargetsThrow) {
  InstanceSpec spec;
  spec.kind = InstanceKind::signal_vs_zero;
  spec.target_distance = 10.0;
  EXPECT_THROW(shiftreg::make_alt_instance(spec, 1), shiftreg::InfeasibleSpec);
  spec.kind = InstanceKind::two_frequency;
  EXPECT_THROW(shiftreg::make_alt_instance(spec, 1), shiftreg::InfeasibleSpec);
  spec.target_distance = 0.1;
  spec.J = 1;
  EXPECT_THROW(shiftreg::make_alt_instance(spec, 1), shiftreg::InfeasibleSpec);
  spec.J = 8;
  spec.kind = InstanceKind::null_shift;
  EXPECT_THROW(shiftreg::make_alt_instance(spec, 1), shiftreg::InvalidInput);
}

TEST(AltInstance, InfeasibilityNamesTheConstraint) {
  InstanceSpec spec;
  spec.kind = InstanceKind::signal_vs_zero;
  spec.target_distance = 1.2;
  try {
    shiftreg::make_alt_instance(spec, 1);
    FAIL();
  } catch (const shiftreg::InfeasibleSpec& e) {
    EXPECT_NE(std::string(e.what()).find("L"), std::string::npos) << e.what();
  }
}

TEST(RandomBallSequence, StaysInsideTheBall) {
  shiftreg::CounterRng rng(4);
  for (double s : {0.5, 1.0, 2.5}) {
    const SobolevClass cls(s, 1.5);
    for (int k = 0; k < 20; ++k) {
      const auto seq = shiftreg::random_ball_sequence(40, cls, rng, 1.0);
      EXPECT_TRUE(shiftreg::in_sobolev_ball(seq, cls));
      EXPECT_NEAR(shiftreg::sobolev_norm(seq, s), 1.5, 1e-12);
    }
  }
}

TEST(InstanceKind, StringRoundTrip) {
  for (auto kind : {InstanceKind::null_shift, InstanceKind::signal_vs_zero,
                    InstanceKind::two_frequency}) {
    EXPECT_EQ(shiftreg::instance_kind_from_string(shiftreg::to_string(kind)), kind);
  }
  EXPECT_THROW(shiftreg::instance_kind_from_string("bogus"), shiftreg::InvalidInput);
}

TEST(InstanceSpec, Validation) {
  InstanceSpec spec;
  spec.tau = -0.1;
  EXPECT_THROW(spec.validate(), shiftreg::InvalidInput);
  spec.tau = 0.0;
  spec.J = 0;
  EXPECT_THROW(spec.validate(), shiftreg::InvalidInput);
  EXPECT_EQ(shiftreg::default_truncation(5), 64u);
  EXPECT_EQ(shiftreg::default_truncation(37), 148u);
}

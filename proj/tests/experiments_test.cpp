#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "shiftreg/errors.hpp"
#include "shiftreg/experiments.hpp"
#include "shiftreg/rng.hpp"

using shiftreg::ExperimentConfig;
using shiftreg::InstanceKind;
using shiftreg::SobolevClass;
using shiftreg::TestKind;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.sigma = 0.1;
  cfg.trials = 300;
  cfg.master_seed = 77;
  cfg.instance.J = 0;
  cfg.instance.tau = 1.1;
  return cfg;
}

}  // namespace

TEST(RunTrials, IndependentOfWorkerCount) {
  for (TestKind kind : {TestKind::nonadaptive, TestKind::adaptive}) {
    ExperimentConfig cfg = small_config();
    cfg.test_kind = kind;
    cfg.parallelism = 1;
    const auto one = shiftreg::run_trials(cfg);
    cfg.parallelism = 8;
    const auto eight = shiftreg::run_trials(cfg);
    EXPECT_EQ(one.statistics, eight.statistics);
    EXPECT_EQ(one.rejects, eight.rejects);
  }
}

TEST(RunTrials, ResolvesDefaultTruncation) {
  const auto batch = shiftreg::run_trials(small_config());
  ASSERT_EQ(batch.n_grid.size(), 1u);
  EXPECT_EQ(batch.J, shiftreg::default_truncation(batch.n_grid[0]));
  ExperimentConfig cfg = small_config();
  cfg.instance.J = 3;
  EXPECT_THROW(shiftreg::run_trials(cfg), shiftreg::ConfigurationError);
}

TEST(RunTrials, MemberCountsBoundTheMaxTest) {
  ExperimentConfig cfg = small_config();
  cfg.sigma = 0.05;
  cfg.test_kind = TestKind::adaptive;
  const auto batch = shiftreg::run_trials(cfg);
  std::size_t sum = 0, largest = 0;
  for (std::size_t k = 0; k < batch.n_grid.size(); ++k) {
    sum += batch.member_rejection_count(k);
    largest = std::max(largest, batch.member_rejection_count(k));
  }
  EXPECT_LE(batch.rejection_count(), sum);
  EXPECT_GE(batch.rejection_count(), largest);
}

TEST(TypeOne, ZeroNoiseNeverRejects) {
  ExperimentConfig cfg = small_config();
  cfg.trials = 1;
  cfg.noise_scale = 0.0;
  const auto est = shiftreg::estimate_type_one(cfg);
  EXPECT_EQ(est.rate, 0.0);
  EXPECT_EQ(est.trials, 1u);
}

TEST(TypeOne, DeterministicInSeed) {
  const auto a = shiftreg::estimate_type_one(small_config());
  const auto b = shiftreg::estimate_type_one(small_config());
  EXPECT_EQ(a, b);
}

TEST(TypeOne, RequiresNullInstance) {
  ExperimentConfig cfg = small_config();
  cfg.instance.kind = InstanceKind::signal_vs_zero;
  cfg.instance.target_distance = 0.2;
  EXPECT_THROW(shiftreg::estimate_type_one(cfg), shiftreg::InvalidInput);
  cfg.instance.kind = InstanceKind::null_shift;
  EXPECT_THROW(shiftreg::estimate_type_two(cfg), shiftreg::InvalidInput);
}

TEST(TypeTwo, CountsAcceptances) {
  ExperimentConfig cfg = small_config();
  cfg.instance.kind = InstanceKind::signal_vs_zero;
  cfg.instance.target_distance = 0.3;
  const auto batch = shiftreg::run_trials(cfg);
  const auto est = shiftreg::estimate_type_two(cfg);
  EXPECT_EQ(est.rejections, cfg.trials - batch.rejection_count());
}

TEST(TypeTwo, ZeroSeparationIsComplementOfLevel) {
  ExperimentConfig cfg = small_config();
  cfg.trials = 2000;
  cfg.instance.kind = InstanceKind::signal_vs_zero;
  cfg.instance.target_distance = 0.0;
  const auto est = shiftreg::estimate_type_two(cfg);
  const std::size_t N = shiftreg::test_parameters(cfg).first.front();
  const double bound = cfg.alpha + 1.0 / std::sqrt(2.0 * std::numbers::pi * static_cast<double>(N));
  EXPECT_GE(est.rate, 1.0 - bound - 3.0 * est.standard_error());
}

TEST(TypeTwo, ZeroNoiseAlternativeAlwaysRejects) {
  ExperimentConfig cfg = small_config();
  cfg.noise_scale = 0.0;
  cfg.trials = 5;
  // noiseless lambda = d_N^2 / (4 sigma^2 sqrt N) - sqrt N, so d must beat
  // 2 sigma sqrt(N + q sqrt N) ~ 0.84 at sigma = 0.1
  cfg.instance.kind = InstanceKind::signal_vs_zero;
  cfg.instance.target_distance = 0.95;
  EXPECT_EQ(shiftreg::estimate_type_two(cfg).rate, 0.0);
}

TEST(LeastSquares, ExactLine) {
  const std::vector<double> x{1.0, 2.0, 4.0, 7.0};
  std::vector<double> y;
  for (double v : x) y.push_back(0.4 * v - 1.5);
  const auto [slope, intercept] = shiftreg::least_squares_fit(x, y);
  EXPECT_NEAR(slope, 0.4, 1e-14);
  EXPECT_NEAR(intercept, -1.5, 1e-14);
  EXPECT_THROW(shiftreg::least_squares_fit(std::vector<double>{1.0}, std::vector<double>{1.0}),
               shiftreg::InvalidInput);
}

TEST(RateSweep, SmallSweepIsReproducible) {
  shiftreg::SweepConfig cfg;
  cfg.sigmas = {0.1, 0.05};
  cfg.trials = 200;
  cfg.master_seed = 5;
  cfg.c_tolerance = 0.5;
  const auto a = shiftreg::rate_sweep(cfg);
  cfg.parallelism = 3;
  const auto b = shiftreg::rate_sweep(cfg);
  ASSERT_EQ(a.rows.size(), 2u);
  ASSERT_TRUE(a.slope.has_value());
  EXPECT_EQ(*a.slope, *b.slope);
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& row = a.rows[k];
    EXPECT_EQ(row.c_hat, b.rows[k].c_hat);
    EXPECT_LE(row.bracket_high - row.bracket_low, 0.5);
    EXPECT_DOUBLE_EQ(row.rho_emp, row.c_hat * row.rho_star);
    EXPECT_EQ(row.trials, row.curve.size() * cfg.trials);
    // beta at the reported multiplier is at or below the target
    bool found = false;
    for (const auto& p : row.curve) {
      if (p.C == row.c_hat) {
        found = true;
        EXPECT_LE(p.beta, cfg.target_beta);
      }
    }
    EXPECT_TRUE(found);
  }
}

TEST(RateSweep, BracketFailureCarriesTheCurve) {
  shiftreg::SweepConfig cfg;
  cfg.sigmas = {0.2};
  cfg.cls = SobolevClass(1.0, 1.0);  // the ball caps C too low at sigma = 0.2
  cfg.trials = 200;
  try {
    shiftreg::rate_sweep(cfg);
    FAIL();
  } catch (const shiftreg::BracketFailure& e) {
    EXPECT_EQ(e.sigma(), 0.2);
    EXPECT_EQ(e.curve().size(), 2u);
  }
}

TEST(RateSweep, ValidatesConfig) {
  shiftreg::SweepConfig cfg;
  EXPECT_THROW(shiftreg::rate_sweep(cfg), shiftreg::InvalidInput);
  cfg.sigmas = {0.05, 0.1};
  EXPECT_THROW(shiftreg::rate_sweep(cfg), shiftreg::InvalidInput);
}

TEST(TailCheck, ReferenceBoundAndThreshold) {
  const std::vector<double> u(8, 1.0);
  const auto r = shiftreg::lemma4_tail_check(8, u, 4.0, 4.0, 2000, 3);
  EXPECT_NEAR(r.bound, 9.0 * std::exp(-8.0) + std::exp(-8.0), 1e-15);
  EXPECT_NEAR(r.bound, 3.35e-3, 1e-5);
  EXPECT_NEAR(r.threshold, std::sqrt(2.0) * 4.0 * (std::sqrt(8.0) + 4.0), 1e-12);
  EXPECT_FALSE(r.vacuous);
}

TEST(TailCheck, VacuousBound) {
  const std::vector<double> u(4, 1.0);
  const auto r = shiftreg::lemma4_tail_check(4, u, 0.5, 0.5, 100, 3);
  EXPECT_TRUE(r.vacuous);
  EXPECT_TRUE(r.passed);
}

TEST(TailCheck, SingleWeightReducesToProductModulus) {
  // S(t) = u1 Re(e^{it} xi xi~), whose sup is u1 |xi xi~|
  const std::vector<double> u{2.5};
  const std::size_t trials = 500;
  const auto r = shiftreg::lemma4_tail_check(1, u, 1.0, 1.0, trials, 8, 0, true);
  ASSERT_EQ(r.sups.size(), trials);
  for (std::size_t i = 0; i < trials; ++i) {
    shiftreg::CounterRng rng(shiftreg::derive_stream(8, i));
    const double a = rng.normal(), b = rng.normal(), c = rng.normal(), d = rng.normal();
    const double modulus = 2.5 * std::hypot(a, b) * std::hypot(c, d);
    // 64-point grid: the sup is caught within a factor cos(pi/64)
    EXPECT_LE(r.sups[i], modulus * (1.0 + 1e-12));
    EXPECT_GE(r.sups[i], modulus * std::cos(std::numbers::pi / 64.0) * (1.0 - 1e-12));
  }
}

TEST(TailCheck, InvalidArguments) {
  const std::vector<double> u(3, 1.0);
  EXPECT_THROW(shiftreg::lemma4_tail_check(4, u, 1.0, 1.0, 10, 0), shiftreg::InvalidInput);
  EXPECT_THROW(shiftreg::lemma4_tail_check(3, u, 0.0, 1.0, 10, 0), shiftreg::InvalidInput);
}

TEST(NullDistribution, SummaryFields) {
  const auto s = shiftreg::null_statistic_distribution(16, 20000, 4);
  EXPECT_NEAR(s.berry_esseen_bound, 1.0 / std::sqrt(2.0 * std::numbers::pi * 16.0), 1e-15);
  EXPECT_NEAR(s.dkw_band, std::sqrt(std::log(200.0) / 40000.0), 1e-15);
  EXPECT_NEAR(s.mean, 0.0, 5.0 * s.mean_se);
  EXPECT_NEAR(s.variance, 1.0, 5.0 * s.variance_se);
  EXPECT_TRUE(s.deviation_ok);
  EXPECT_THROW(shiftreg::null_statistic_distribution(16, 9999, 4), shiftreg::InvalidInput);
  EXPECT_THROW(shiftreg::null_statistic_distribution(0, 20000, 4), shiftreg::InvalidInput);
}

TEST(NullDistribution, SingleTermIsShiftedExponential) {
  // N = 1: (eta^2 + eta~^2) / 4 is Exp(1), so T = E - 1 and F(-1) = 0 while Phi(-1) = 0.159
  const auto s = shiftreg::null_statistic_distribution(1, 20000, 4, 2);
  EXPECT_GE(s.sup_deviation, 0.15);
  EXPECT_LE(s.sup_deviation, s.berry_esseen_bound + s.dkw_band);
}

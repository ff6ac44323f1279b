#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "shiftreg/binomial.hpp"
#include "shiftreg/instances.hpp"
#include "shiftreg/minimax.hpp"

namespace shiftreg {

/// Stream index reserved for the fixed (c, c#) instance of an experiment;
/// trials use indices 0 .. trials-1.
inline constexpr std::uint64_t kInstanceStream = ~std::uint64_t{0};

/// One reproducible Monte Carlo experiment: a fixed parameter point, a test,
/// and `trials` independent noise draws.
struct ExperimentConfig {
  TestKind test_kind = TestKind::nonadaptive;
  double sigma = 0.05;
  SobolevClass cls{1.0, 1.0};  ///< nonadaptive test tuning
  double alpha = 0.05;         ///< nonadaptive level
  double s1 = 0.5;             ///< adaptive range
  double s2 = 2.0;
  InstanceSpec instance;       ///< J == 0 selects default_truncation
  std::size_t trials = 1000;
  std::uint64_t master_seed = 0;
  std::size_t parallelism = 0;  ///< 0 = hardware concurrency
  double noise_scale = 1.0;     ///< test hook, 0 silences the noise

  void validate() const;
};

/// Statistics of every trial of an experiment. `statistics[i]` is aligned
/// with `n_grid` (a single entry for the nonadaptive test).
struct TrialBatch {
  std::vector<std::size_t> n_grid;
  double threshold = 0.0;
  std::size_t J = 0;
  std::vector<std::vector<double>> statistics;
  std::vector<char> rejects;

  std::size_t rejection_count() const noexcept;
  /// Rejections of the single-N member test psi(n_grid[k], threshold).
  std::size_t member_rejection_count(std::size_t k) const noexcept;
};

/// The test's bandwidth grid and threshold for `cfg`.
std::pair<std::vector<std::size_t>, double> test_parameters(
    const ExperimentConfig& cfg);

/// The instance an experiment uses: spec with J resolved, generated from
/// derive_stream(master_seed, kInstanceStream).
SequencePair experiment_instance(const ExperimentConfig& cfg);

/// Runs every trial. Trial i simulates with derive_stream(master_seed, i),
/// so the batch does not depend on cfg.parallelism.
TrialBatch run_trials(const ExperimentConfig& cfg);

/// Empirical type I error. Throws InvalidInput unless the instance is a
/// null_shift.
ErrorEstimate estimate_type_one(const ExperimentConfig& cfg);

/// Empirical type II error: `rejections` and `rate` count ACCEPTANCES.
/// Throws InvalidInput for a null_shift instance.
ErrorEstimate estimate_type_two(const ExperimentConfig& cfg);

struct SweepConfig {
  std::vector<double> sigmas;  ///< strictly decreasing, each in (0, 1)
  /// L = 2 so that beta = 0.5 is reachable inside the ball at sigma = 0.2
  SobolevClass cls{1.0, 2.0};
  double alpha = 0.05;
  double target_beta = 0.5;
  std::size_t trials = 1000;
  std::uint64_t master_seed = 0;
  std::size_t parallelism = 0;
  double c_low = 0.1;
  double c_high = 50.0;
  double c_tolerance = 0.25;

  void validate() const;
};

struct PowerPoint {
  double C = 0.0;
  double beta = 0.0;
};

struct SweepRow {
  double sigma = 0.0;
  double rho_star = 0.0;
  double c_hat = 0.0;     ///< smallest probed C with beta <= target
  double rho_emp = 0.0;   ///< c_hat * rho_star
  std::size_t trials = 0; ///< total trials spent on this sigma
  double ci_low = 0.0;    ///< 95% interval of beta at c_hat
  double ci_high = 0.0;
  double bracket_low = 0.0;
  double bracket_high = 0.0;
  std::size_t N = 0;
  std::vector<PowerPoint> curve;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::optional<double> slope;  ///< least squares of log rho_emp on log(sigma^2 sqrt(log 1/sigma))
  std::optional<double> intercept;
  bool c_hat_monotone = true;   ///< diagnostic only
};

/// Bisection failed: the power curve does not cross the target inside the
/// feasible multiplier range.
class BracketFailure : public std::runtime_error {
 public:
  BracketFailure(const std::string& what, double sigma,
                 std::vector<PowerPoint> curve)
      : std::runtime_error(what), sigma_(sigma), curve_(std::move(curve)) {}

  double sigma() const noexcept { return sigma_; }
  const std::vector<PowerPoint>& curve() const noexcept { return curve_; }

 private:
  double sigma_;
  std::vector<PowerPoint> curve_;
};

/// For each sigma, bisects the multiplier C of signal_vs_zero alternatives
/// at distance C * rho*_sigma until the type II error of the nonadaptive
/// test crosses target_beta (bracket narrower than c_tolerance). The upper
/// end of the bracket is capped at L / rho*_sigma, the largest distance a
/// single-frequency signal in the ball can reach. Every probe at one sigma
/// reuses the same noise streams.
SweepResult rate_sweep(const SweepConfig& cfg);

/// Least-squares slope and intercept of y on x; needs >= 2 distinct x.
std::pair<double, double> least_squares_fit(std::span<const double> x,
                                            std::span<const double> y);

struct TailCheckResult {
  ErrorEstimate empirical;  ///< exceedances of the sup-norm threshold
  double threshold = 0.0;   ///< sqrt(2) x (||u||_2 + y ||u||_inf)
  double bound = 0.0;       ///< (N+1) e^{-x^2/2} + e^{-y^2/2}
  bool vacuous = false;     ///< bound >= 1
  bool passed = false;      ///< vacuous, or empirical <= bound + 3 SE
  /// Per-trial sup values, kept when requested (for reduction tests).
  std::vector<double> sups;
};

/// Simulates S(t) = sum_j u_j Re(e^{ijt} xi_j xi~_j) and records whether
/// its max modulus over a 64N-point grid of t exceeds the threshold.
/// The grid under-estimates the true sup. Throws InvalidInput unless
/// x, y > 0, trials >= 1 and u.size() == N.
TailCheckResult lemma4_tail_check(std::size_t N, std::span<const double> u,
                                  double x, double y, std::size_t trials,
                                  std::uint64_t master_seed,
                                  std::size_t parallelism = 0,
                                  bool keep_sups = false);

struct NullDistributionSummary {
  std::size_t N = 0;
  std::size_t trials = 0;
  double mean = 0.0;
  double variance = 0.0;
  double mean_se = 0.0;
  double variance_se = 0.0;
  double sup_deviation = 0.0;       ///< max over the x-grid of |F_hat - Phi|
  double berry_esseen_bound = 0.0;  ///< 1 / sqrt(2 pi N)
  double dkw_band = 0.0;            ///< sqrt(log(2 / 0.01) / (2 trials))
  bool moments_ok = false;          ///< mean and variance within 3 SE
  bool deviation_ok = false;        ///< sup_deviation <= BE + dkw_band
};

/// Samples sum_j (eta_j^2 + eta~_j^2 - 4) / (4 sqrt N) with eta, eta~ ~ N(0, 2),
/// the statistic under the null with the true shift plugged in, and compares
/// its empirical CDF with Phi on the grid x = -5, -4.99, ..., 5.
/// Throws InvalidInput unless trials >= 10^4 and N >= 1.
NullDistributionSummary null_statistic_distribution(
    std::size_t N, std::size_t trials, std::uint64_t master_seed,
    std::size_t parallelism = 0);

}  // namespace shiftreg

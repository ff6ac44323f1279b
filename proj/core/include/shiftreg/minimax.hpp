#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "shiftreg/sequence.hpp"
#include "shiftreg/shift.hpp"

namespace shiftreg {

/// rho*_sigma(s) = (sigma^2 sqrt(log 1/sigma))^{2s/(4s+1)}.
/// Throws DomainError unless 0 < sigma < 1 and s > 0.
double separation_rate(double sigma, double s);

/// c_{s,L} = (4 s L^2 sqrt(4s+1))^{2/(4s+1)}.
double bandwidth_constant(const SobolevClass& cls) noexcept;

/// A bandwidth obtained from a floor bracket, clamped below at 1.
struct Bandwidth {
  std::size_t N = 1;
  bool clamped = false;  ///< true when the bracket evaluated to 0
};

/// N_sigma(s, L) = max(1, floor(c_{s,L} * rho_sigma^{-1/s})).
Bandwidth bandwidth_nonadaptive(double sigma, const SobolevClass& cls);

/// q_alpha, the (1 - alpha)-quantile of the standard Gaussian.
/// Throws DomainError unless alpha in (0, 1).
double threshold_nonadaptive(double alpha);

struct StatisticValue {
  double value = 0.0;
  ShiftSolution shift;
};

/// lambda_sigma(N) = min_tau sum_{j<=N} |Y_j - e^{-ijtau} Y#_j|^2
///                   / (4 sigma^2 sqrt N) - sqrt N.
/// Throws InvalidInput unless 1 <= N <= obs.size().
StatisticValue statistic(const ObservationPair& obs, std::size_t N,
                         double tol = kDefaultShiftTolerance);

/// Parameters of the test tuned to a known Sobolev class.
struct NonadaptiveConfig {
  SobolevClass cls;
  double alpha;
  double sigma;
  std::size_t N;
  double q;
  bool clamped;

  /// Validates alpha in (0,1) and sigma in (0,1), then derives N and q.
  static NonadaptiveConfig make(double sigma, const SobolevClass& cls,
                                double alpha);
};

/// Bandwidth grid of the adaptive test over smoothness range [s1, s2].
struct AdaptiveConfig {
  double s1;
  double s2;
  double sigma;
  std::vector<double> s_grid;       ///< s1 + j / log(1/sigma), j = 0, 1, ...
  std::vector<std::size_t> n_grid;  ///< distinct floor(rho*(s)^{-1/s}), >= 1
  double q;                         ///< sqrt(2 log log 1/sigma)
  bool clamped;                     ///< some bracket evaluated to 0
};

/// Throws DomainError unless 0 < s1 < s2 and 0 < sigma < e^{-1}.
AdaptiveConfig adaptive_grid(double sigma, double s1, double s2);

/// sqrt(2 log log 1/sigma); throws DomainError unless 0 < sigma < e^{-1}.
double threshold_adaptive(double sigma);

enum class TestKind { nonadaptive, adaptive };

std::string_view to_string(TestKind kind) noexcept;
/// Accepts "nonadaptive" and "adaptive". Throws InvalidInput.
TestKind test_kind_from_string(std::string_view name);

struct TestOutcome {
  TestKind kind = TestKind::nonadaptive;
  double statistic = 0.0;      ///< lambda(N), or its max over the grid
  double threshold = 0.0;
  bool reject = false;         ///< statistic > threshold, strictly
  ShiftSolution shift;         ///< minimizer behind `statistic`
  std::vector<std::size_t> N;  ///< one entry for the nonadaptive test
  std::vector<double> per_N;   ///< adaptive only, aligned with N
  std::size_t argmax_N = 0;   ///< the bandwidth (not index) attaining the max
  double sigma = 0.0;
  double alpha = 0.0;          ///< nonadaptive only
  double s1 = 0.0, s2 = 0.0;   ///< adaptive only
  std::optional<SobolevClass> cls;
};

/// psi_sigma(N, q_alpha) with N = N_sigma(s, L).
/// Throws ConfigurationError when obs is shorter than the derived N.
TestOutcome nonadaptive_test(const ObservationPair& obs,
                             const SobolevClass& cls, double alpha);

/// Same decision rule for a prepared configuration.
TestOutcome nonadaptive_test(const ObservationPair& obs,
                             const NonadaptiveConfig& cfg);

/// max over N in n_grid of psi_sigma(N, q), for an arbitrary grid and q.
/// Throws ConfigurationError when obs is shorter than max(n_grid).
TestOutcome max_test(const ObservationPair& obs,
                     std::span<const std::size_t> n_grid, double q);

/// The adaptive Bonferroni test over [s1, s2] with q = sqrt(2 log log 1/sigma).
TestOutcome adaptive_test(const ObservationPair& obs, double s1, double s2);
TestOutcome adaptive_test(const ObservationPair& obs,
                          const AdaptiveConfig& cfg);

/// min_tau sum_j w_j |Y_j - e^{-ijtau} Y#_j|^2 / (4 sigma^2 sqrt N) - ||w||_2,
/// summed over the first w.size() coefficients.
/// N defaults to the number of positive weights.
/// Throws InvalidInput when a weight leaves [0, 1], all weights vanish or
/// w is longer than the observation.
double weighted_statistic(const ObservationPair& obs, std::span<const double> w,
                          std::optional<std::size_t> N = std::nullopt,
                          double tol = kDefaultShiftTolerance);

/// sqrt(4 L^2 c^{-2s} + sqrt(256 c / (4s+1))), c = c_{s,L}: the smallest
/// separation constant covered by the nonadaptive guarantee.
double minimal_constant_nonadaptive(const SobolevClass& cls) noexcept;

/// max(64 / sqrt(4 s1 + 1), 1/4 + sqrt(1/16 + 4 L2^2 e^{8/(4 s1+1)^2})),
/// a sufficient separation constant for the adaptive test.
/// Throws DomainError unless s1 > 0 and L2 > 0.
double adaptive_constant_bound(double s1, double L2);

}  // namespace shiftreg

#include "shiftreg/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "shiftreg/errors.hpp"
#include "shiftreg/normal.hpp"

namespace shiftreg {
namespace {

void check_unit_sigma(double sigma, const char* where) {
  if (!(sigma > 0.0 && sigma < 1.0)) {
    throw DomainError(std::string(where) + ": sigma must lie in (0, 1), got " +
                      std::to_string(sigma));
  }
}

void check_adaptive_sigma(double sigma, const char* where) {
  if (!(sigma > 0.0 && sigma < std::exp(-1.0))) {
    throw DomainError(std::string(where) +
                      ": sigma must lie in (0, e^-1) so that log log(1/sigma) > 0, got " +
                      std::to_string(sigma));
  }
}

void require_length(const ObservationPair& obs, std::size_t N, const char* where) {
  if (obs.size() < N) {
    throw ConfigurationError(std::string(where) + ": bandwidth N=" + std::to_string(N) +
                             " requires J >= " + std::to_string(N) + ", observation has J=" +
                             std::to_string(obs.size()));
  }
}

Bandwidth floor_bracket(double x) {
  const double f = std::floor(x);
  if (!(f >= 1.0)) return {1, true};
  return {static_cast<std::size_t>(f), false};
}

}  // namespace

double separation_rate(double sigma, double s) {
  check_unit_sigma(sigma, "separation_rate");
  if (!(s > 0.0)) throw DomainError("separation_rate: smoothness must be positive");
  const double base = sigma * sigma * std::sqrt(std::log(1.0 / sigma));
  return std::pow(base, 2.0 * s / (4.0 * s + 1.0));
}

double bandwidth_constant(const SobolevClass& cls) noexcept {
  const double s = cls.s();
  const double L = cls.L();
  return std::pow(4.0 * s * L * L * std::sqrt(4.0 * s + 1.0), 2.0 / (4.0 * s + 1.0));
}

Bandwidth bandwidth_nonadaptive(double sigma, const SobolevClass& cls) {
  const double rho = separation_rate(sigma, cls.s());
  return floor_bracket(bandwidth_constant(cls) * std::pow(rho, -1.0 / cls.s()));
}

double threshold_nonadaptive(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("threshold_nonadaptive: alpha must lie in (0, 1)");
  }
  return -normal_quantile(alpha) + 0.0;
}

StatisticValue statistic(const ObservationPair& obs, std::size_t N, double tol) {
  if (N < 1 || N > obs.size()) {
    throw InvalidInput("statistic: bandwidth N=" + std::to_string(N) + " outside [1, " +
                       std::to_string(obs.size()) + "]");
  }
  StatisticValue out;
  out.shift = minimize_over_shift(obs.y(), obs.y_sharp(), N, tol);
  const double root_n = std::sqrt(static_cast<double>(N));
  const double sigma2 = obs.sigma() * obs.sigma();
  out.value = out.shift.value / (4.0 * sigma2 * root_n) - root_n;
  return out;
}

NonadaptiveConfig NonadaptiveConfig::make(double sigma, const SobolevClass& cls, double alpha) {
  check_unit_sigma(sigma, "NonadaptiveConfig");
  const double q = threshold_nonadaptive(alpha);
  const Bandwidth bw = bandwidth_nonadaptive(sigma, cls);
  return NonadaptiveConfig{cls, alpha, sigma, bw.N, q, bw.clamped};
}

double threshold_adaptive(double sigma) {
  check_adaptive_sigma(sigma, "threshold_adaptive");
  return std::sqrt(2.0 * std::log(std::log(1.0 / sigma)));
}

AdaptiveConfig adaptive_grid(double sigma, double s1, double s2) {
  check_adaptive_sigma(sigma, "adaptive_grid");
  if (!(s1 > 0.0 && s2 > s1)) {
    throw DomainError("adaptive_grid: need 0 < s1 < s2");
  }
  AdaptiveConfig cfg{s1, s2, sigma, {}, {}, threshold_adaptive(sigma), false};
  const double log_inv = std::log(1.0 / sigma);
  // Slack absorbs rounding in log(1/sigma) when (s2 - s1) log(1/sigma) is an integer.
  const auto steps = static_cast<std::size_t>(std::floor((s2 - s1) * log_inv + 1e-9));
  for (std::size_t j = 0; j <= steps; ++j) {
    const double s = s1 + static_cast<double>(j) / log_inv;
    cfg.s_grid.push_back(s);
    const Bandwidth bw = floor_bracket(std::pow(separation_rate(sigma, s), -1.0 / s));
    cfg.clamped = cfg.clamped || bw.clamped;
    if (std::find(cfg.n_grid.begin(), cfg.n_grid.end(), bw.N) == cfg.n_grid.end()) {
      cfg.n_grid.push_back(bw.N);
    }
  }
  return cfg;
}

std::string_view to_string(TestKind kind) noexcept {
  return kind == TestKind::nonadaptive ? "nonadaptive" : "adaptive";
}

TestKind test_kind_from_string(std::string_view name) {
  if (name == "nonadaptive") return TestKind::nonadaptive;
  if (name == "adaptive") return TestKind::adaptive;
  throw InvalidInput("unknown test kind '" + std::string(name) +
                     "' (expected nonadaptive or adaptive)");
}

TestOutcome nonadaptive_test(const ObservationPair& obs, const NonadaptiveConfig& cfg) {
  require_length(obs, cfg.N, "nonadaptive_test");
  const StatisticValue stat = statistic(obs, cfg.N);
  TestOutcome out;
  out.kind = TestKind::nonadaptive;
  out.statistic = stat.value;
  out.threshold = cfg.q;
  out.reject = stat.value > cfg.q;
  out.shift = stat.shift;
  out.N = {cfg.N};
  out.argmax_N = cfg.N;
  out.sigma = obs.sigma();
  out.alpha = cfg.alpha;
  out.cls = cfg.cls;
  return out;
}

TestOutcome nonadaptive_test(const ObservationPair& obs, const SobolevClass& cls, double alpha) {
  return nonadaptive_test(obs, NonadaptiveConfig::make(obs.sigma(), cls, alpha));
}

TestOutcome max_test(const ObservationPair& obs, std::span<const std::size_t> n_grid, double q) {
  if (n_grid.empty()) throw InvalidInput("max_test: empty bandwidth grid");
  require_length(obs, *std::max_element(n_grid.begin(), n_grid.end()), "max_test");
  TestOutcome out;
  out.kind = TestKind::adaptive;
  out.threshold = q;
  out.sigma = obs.sigma();
  out.N.assign(n_grid.begin(), n_grid.end());
  out.per_N.reserve(n_grid.size());
  for (std::size_t k = 0; k < n_grid.size(); ++k) {
    const StatisticValue stat = statistic(obs, n_grid[k]);
    out.per_N.push_back(stat.value);
    if (k == 0 || stat.value > out.statistic) {
      out.statistic = stat.value;
      out.shift = stat.shift;
      out.argmax_N = n_grid[k];
    }
  }
  out.reject = out.statistic > q;
  return out;
}

TestOutcome adaptive_test(const ObservationPair& obs, const AdaptiveConfig& cfg) {
  TestOutcome out = max_test(obs, cfg.n_grid, cfg.q);
  out.s1 = cfg.s1;
  out.s2 = cfg.s2;
  return out;
}

TestOutcome adaptive_test(const ObservationPair& obs, double s1, double s2) {
  return adaptive_test(obs, adaptive_grid(obs.sigma(), s1, s2));
}

double weighted_statistic(const ObservationPair& obs, std::span<const double> w,
                          std::optional<std::size_t> N, double tol) {
  if (w.empty() || w.size() > obs.size()) {
    throw InvalidInput("weighted_statistic: weight length must lie in [1, J]");
  }
  std::size_t positive = 0;
  double weight_norm2 = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (!(w[k] >= 0.0 && w[k] <= 1.0)) {
      throw InvalidInput("weighted_statistic: weight w_" + std::to_string(k + 1) +
                         " outside [0, 1]");
    }
    if (w[k] > 0.0) ++positive;
    weight_norm2 += w[k] * w[k];
  }
  if (positive == 0) throw InvalidInput("weighted_statistic: all weights are zero");
  const std::size_t normalizer = N.value_or(positive);
  if (normalizer == 0) throw InvalidInput("weighted_statistic: N must be positive");

  // sqrt(w_j) |Y_j - e^{-ij tau} Y#_j| = |sqrt(w_j) Y_j - e^{-ij tau} sqrt(w_j) Y#_j|
  std::vector<Complex> a(w.size()), b(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double r = std::sqrt(w[k]);
    a[k] = r * obs.y().coeffs()[k];
    b[k] = r * obs.y_sharp().coeffs()[k];
  }
  const ShiftSolution sol = minimize_over_shift(FourierSequence(std::move(a)),
                                                FourierSequence(std::move(b)), w.size(), tol);
  const double sigma2 = obs.sigma() * obs.sigma();
  return sol.value / (4.0 * sigma2 * std::sqrt(static_cast<double>(normalizer))) -
         std::sqrt(weight_norm2);
}

double minimal_constant_nonadaptive(const SobolevClass& cls) noexcept {
  const double c = bandwidth_constant(cls);
  const double s = cls.s();
  const double L = cls.L();
  return std::sqrt(4.0 * L * L * std::pow(c, -2.0 * s) + std::sqrt(256.0 * c / (4.0 * s + 1.0)));
}

double adaptive_constant_bound(double s1, double L2) {
  if (!(s1 > 0.0) || !(L2 > 0.0)) {
    throw DomainError("adaptive_constant_bound: need s1 > 0 and L2 > 0");
  }
  const double k = 4.0 * s1 + 1.0;
  const double first = 64.0 / std::sqrt(k);
  const double second = 0.25 + std::sqrt(1.0 / 16.0 + 4.0 * L2 * L2 * std::exp(8.0 / (k * k)));
  return std::max(first, second);
}

}  // namespace shiftreg

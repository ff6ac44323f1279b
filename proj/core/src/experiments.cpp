#include "shiftreg/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "shiftreg/errors.hpp"
#include "shiftreg/normal.hpp"
#include "shiftreg/parallel.hpp"
#include "shiftreg/rng.hpp"

namespace shiftreg {
namespace {

std::size_t resolved_truncation(const ExperimentConfig& cfg,
                                const std::vector<std::size_t>& n_grid) {
  const std::size_t max_n = *std::max_element(n_grid.begin(), n_grid.end());
  const std::size_t J = cfg.instance.J == 0 ? default_truncation(max_n) : cfg.instance.J;
  if (J < max_n) {
    throw ConfigurationError("experiment: truncation J=" + std::to_string(J) +
                             " is shorter than the largest bandwidth N=" + std::to_string(max_n) +
                             "; need J >= " + std::to_string(max_n));
  }
  return J;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (trials < 1) throw InvalidInput("ExperimentConfig: trials must be at least 1");
  if (!(noise_scale >= 0.0)) throw InvalidInput("ExperimentConfig: noise_scale must be >= 0");
  InstanceSpec probe = instance;
  if (probe.J == 0) probe.J = 1;
  probe.validate();
  if (test_kind == TestKind::nonadaptive) {
    NonadaptiveConfig::make(sigma, cls, alpha);
  } else {
    adaptive_grid(sigma, s1, s2);
  }
}

std::size_t TrialBatch::rejection_count() const noexcept {
  return static_cast<std::size_t>(std::count(rejects.begin(), rejects.end(), char{1}));
}

std::size_t TrialBatch::member_rejection_count(std::size_t k) const noexcept {
  std::size_t count = 0;
  for (const auto& stats : statistics) {
    if (stats[k] > threshold) ++count;
  }
  return count;
}

std::pair<std::vector<std::size_t>, double> test_parameters(const ExperimentConfig& cfg) {
  if (cfg.test_kind == TestKind::nonadaptive) {
    const NonadaptiveConfig na = NonadaptiveConfig::make(cfg.sigma, cfg.cls, cfg.alpha);
    return {{na.N}, na.q};
  }
  const AdaptiveConfig ad = adaptive_grid(cfg.sigma, cfg.s1, cfg.s2);
  return {ad.n_grid, ad.q};
}

SequencePair experiment_instance(const ExperimentConfig& cfg) {
  const auto [n_grid, q] = test_parameters(cfg);
  InstanceSpec spec = cfg.instance;
  spec.J = resolved_truncation(cfg, n_grid);
  return make_instance(spec, derive_stream(cfg.master_seed, kInstanceStream));
}

TrialBatch run_trials(const ExperimentConfig& cfg) {
  cfg.validate();
  TrialBatch batch;
  std::tie(batch.n_grid, batch.threshold) = test_parameters(cfg);
  batch.J = resolved_truncation(cfg, batch.n_grid);
  const auto [c, c_sharp] = experiment_instance(cfg);

  batch.statistics.assign(cfg.trials, {});
  batch.rejects.assign(cfg.trials, 0);
  const NonadaptiveConfig na = cfg.test_kind == TestKind::nonadaptive
                                   ? NonadaptiveConfig::make(cfg.sigma, cfg.cls, cfg.alpha)
                                   : NonadaptiveConfig{cfg.cls, 0.0, 0.0, 0, 0.0, false};

  parallel_for(cfg.trials, cfg.parallelism, [&](std::size_t i) {
    const ObservationPair obs = simulate_pair(c, c_sharp, cfg.sigma,
                                              derive_stream(cfg.master_seed, i), cfg.noise_scale);
    if (cfg.test_kind == TestKind::nonadaptive) {
      const TestOutcome out = nonadaptive_test(obs, na);
      batch.statistics[i] = {out.statistic};
      batch.rejects[i] = out.reject ? 1 : 0;
    } else {
      const TestOutcome out = max_test(obs, batch.n_grid, batch.threshold);
      batch.statistics[i] = out.per_N;
      batch.rejects[i] = out.reject ? 1 : 0;
    }
  });
  return batch;
}

ErrorEstimate estimate_type_one(const ExperimentConfig& cfg) {
  if (cfg.instance.kind != InstanceKind::null_shift) {
    throw InvalidInput("estimate_type_one: the instance must be a null_shift");
  }
  const TrialBatch batch = run_trials(cfg);
  return make_estimate(batch.rejection_count(), cfg.trials);
}

ErrorEstimate estimate_type_two(const ExperimentConfig& cfg) {
  if (cfg.instance.kind == InstanceKind::null_shift) {
    throw InvalidInput("estimate_type_two: the instance must describe an alternative");
  }
  const TrialBatch batch = run_trials(cfg);
  return make_estimate(cfg.trials - batch.rejection_count(), cfg.trials);
}

void SweepConfig::validate() const {
  if (sigmas.empty()) throw InvalidInput("rate_sweep: no noise levels given");
  for (std::size_t k = 0; k < sigmas.size(); ++k) {
    if (!(sigmas[k] > 0.0 && sigmas[k] < 1.0)) {
      throw InvalidInput("rate_sweep: every sigma must lie in (0, 1)");
    }
    if (k > 0 && !(sigmas[k] < sigmas[k - 1])) {
      throw InvalidInput("rate_sweep: sigmas must be strictly decreasing");
    }
  }
  if (!(target_beta > 0.0 && target_beta < 1.0)) {
    throw InvalidInput("rate_sweep: target_beta must lie in (0, 1)");
  }
  if (trials < 1) throw InvalidInput("rate_sweep: trials must be at least 1");
  if (!(c_low > 0.0 && c_high > c_low && c_tolerance > 0.0)) {
    throw InvalidInput("rate_sweep: need 0 < c_low < c_high and c_tolerance > 0");
  }
}

std::pair<double, double> least_squares_fit(std::span<const double> x,
                                            std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InvalidInput("least_squares_fit: need at least two paired points");
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  if (sxx == 0.0) throw InvalidInput("least_squares_fit: x values are all equal");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

SweepResult rate_sweep(const SweepConfig& cfg) {
  cfg.validate();
  SweepResult result;
  for (std::size_t si = 0; si < cfg.sigmas.size(); ++si) {
    const double sigma = cfg.sigmas[si];
    SweepRow row;
    row.sigma = sigma;
    row.rho_star = separation_rate(sigma, cfg.cls.s());
    row.N = bandwidth_nonadaptive(sigma, cfg.cls).N;

    ExperimentConfig exp;
    exp.test_kind = TestKind::nonadaptive;
    exp.sigma = sigma;
    exp.cls = cfg.cls;
    exp.alpha = cfg.alpha;
    exp.instance.kind = InstanceKind::signal_vs_zero;
    exp.instance.cls = cfg.cls;
    exp.instance.J = default_truncation(row.N);
    exp.trials = cfg.trials;
    exp.master_seed = derive_stream(cfg.master_seed, si);
    exp.parallelism = cfg.parallelism;

    auto probe = [&](double C) {
      exp.instance.target_distance = C * row.rho_star;
      const ErrorEstimate beta = estimate_type_two(exp);
      row.curve.push_back({C, beta.rate});
      row.trials += cfg.trials;
      return beta;
    };

    double lo = cfg.c_low;
    double hi = std::min(cfg.c_high, cfg.cls.L() / row.rho_star);
    if (!(hi > lo)) {
      throw BracketFailure("rate_sweep: at sigma=" + std::to_string(sigma) +
                               " the Sobolev radius caps C at " + std::to_string(hi) +
                               ", below the lower end " + std::to_string(lo),
                           sigma, row.curve);
    }
    const ErrorEstimate beta_lo = probe(lo);
    ErrorEstimate beta_hi = probe(hi);
    if (beta_lo.rate <= cfg.target_beta || beta_hi.rate > cfg.target_beta) {
      std::ostringstream msg;
      msg << "rate_sweep: type II error does not cross " << cfg.target_beta << " on C in [" << lo
          << ", " << hi << "] at sigma=" << sigma << " (beta=" << beta_lo.rate << " at C=" << lo
          << ", beta=" << beta_hi.rate << " at C=" << hi << ")";
      throw BracketFailure(msg.str(), sigma, row.curve);
    }
    while (hi - lo > cfg.c_tolerance) {
      const double mid = 0.5 * (lo + hi);
      const ErrorEstimate beta_mid = probe(mid);
      if (beta_mid.rate <= cfg.target_beta) {
        hi = mid;
        beta_hi = beta_mid;
      } else {
        lo = mid;
      }
    }
    row.bracket_low = lo;
    row.bracket_high = hi;
    row.c_hat = hi;
    row.rho_emp = row.c_hat * row.rho_star;
    row.ci_low = beta_hi.ci_low;
    row.ci_high = beta_hi.ci_high;
    result.rows.push_back(std::move(row));
  }

  if (result.rows.size() >= 2) {
    std::vector<double> x, y;
    for (const SweepRow& row : result.rows) {
      x.push_back(std::log(row.sigma * row.sigma * std::sqrt(std::log(1.0 / row.sigma))));
      y.push_back(std::log(row.rho_emp));
    }
    const auto [slope, intercept] = least_squares_fit(x, y);
    result.slope = slope;
    result.intercept = intercept;
    bool up = true, down = true;
    for (std::size_t k = 1; k < result.rows.size(); ++k) {
      up = up && result.rows[k].c_hat >= result.rows[k - 1].c_hat;
      down = down && result.rows[k].c_hat <= result.rows[k - 1].c_hat;
    }
    result.c_hat_monotone = up || down;
  }
  return result;
}

TailCheckResult lemma4_tail_check(std::size_t N, std::span<const double> u, double x, double y,
                                  std::size_t trials, std::uint64_t master_seed,
                                  std::size_t parallelism, bool keep_sups) {
  if (N < 1 || u.size() != N) throw InvalidInput("lemma4_tail_check: u must have N entries");
  if (!(x > 0.0 && y > 0.0)) throw InvalidInput("lemma4_tail_check: x and y must be positive");
  if (trials < 1) throw InvalidInput("lemma4_tail_check: trials must be at least 1");

  double norm2 = 0.0, norm_inf = 0.0;
  for (double v : u) {
    norm2 += v * v;
    norm_inf = std::max(norm_inf, std::abs(v));
  }
  TailCheckResult out;
  out.threshold = std::numbers::sqrt2 * x * (std::sqrt(norm2) + y * norm_inf);
  out.bound = static_cast<double>(N + 1) * std::exp(-0.5 * x * x) + std::exp(-0.5 * y * y);
  out.vacuous = out.bound >= 1.0;

  const std::size_t grid = 64 * N;
  std::vector<Complex> steps(grid);
  for (std::size_t k = 0; k < grid; ++k) {
    steps[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) /
                                   static_cast<double>(grid));
  }
  std::vector<double> sups(trials);
  parallel_for(trials, parallelism, [&](std::size_t i) {
    CounterRng rng(derive_stream(master_seed, i));
    std::vector<Complex> z(N);
    for (std::size_t j = 0; j < N; ++j) {
      const double a = rng.normal(), b = rng.normal();
      const double c = rng.normal(), d = rng.normal();
      z[j] = u[j] * Complex(a, b) * Complex(c, d);
    }
    double sup = 0.0;
    for (std::size_t k = 0; k < grid; ++k) {
      Complex phase = steps[k];
      double value = 0.0;
      for (std::size_t j = 0; j < N; ++j) {
        value += (phase * z[j]).real();
        phase *= steps[k];
      }
      sup = std::max(sup, std::abs(value));
    }
    sups[i] = sup;
  });

  std::size_t exceed = 0;
  for (double s : sups) exceed += s > out.threshold ? 1 : 0;
  out.empirical = make_estimate(exceed, trials);
  const double bound_se =
      std::sqrt(std::min(out.bound, 1.0) * (1.0 - std::min(out.bound, 1.0)) /
                static_cast<double>(trials));
  const double se = std::max(out.empirical.standard_error(), bound_se);
  out.passed = out.vacuous || out.empirical.rate <= out.bound + 3.0 * se;
  if (keep_sups) out.sups = std::move(sups);
  return out;
}

NullDistributionSummary null_statistic_distribution(std::size_t N, std::size_t trials,
                                                    std::uint64_t master_seed,
                                                    std::size_t parallelism) {
  if (N < 1) throw InvalidInput("null_statistic_distribution: N must be at least 1");
  if (trials < 10000) {
    throw InvalidInput("null_statistic_distribution: trials must be at least 10^4");
  }
  const double scale = 4.0 * std::sqrt(static_cast<double>(N));
  std::vector<double> values(trials);
  parallel_for(trials, parallelism, [&](std::size_t i) {
    CounterRng rng(derive_stream(master_seed, i));
    double sum = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      const double eta = std::numbers::sqrt2 * rng.normal();
      const double eta_tilde = std::numbers::sqrt2 * rng.normal();
      sum += eta * eta + eta_tilde * eta_tilde - 4.0;
    }
    values[i] = sum / scale;
  });

  NullDistributionSummary out;
  out.N = N;
  out.trials = trials;
  const double n = static_cast<double>(trials);
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double m2 = 0.0, m4 = 0.0;
  for (double v : values) {
    const double d = v - out.mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m4 /= n;
  out.variance = m2 * n / (n - 1.0);
  out.mean_se = std::sqrt(out.variance / n);
  out.variance_se = std::sqrt(std::max(m4 - m2 * m2, 0.0) / n);

  std::sort(values.begin(), values.end());
  for (int k = -500; k <= 500; ++k) {
    const double x = k / 100.0;
    const auto below = std::lower_bound(values.begin(), values.end(), x) - values.begin();
    const double ecdf = static_cast<double>(below) / n;
    out.sup_deviation = std::max(out.sup_deviation, std::abs(ecdf - normal_cdf(x)));
  }
  out.berry_esseen_bound = 1.0 / std::sqrt(2.0 * std::numbers::pi * static_cast<double>(N));
  out.dkw_band = std::sqrt(std::log(2.0 / 0.01) / (2.0 * n));
  out.moments_ok = std::abs(out.mean) <= 3.0 * out.mean_se &&
                   std::abs(out.variance - 1.0) <= 3.0 * out.variance_se;
  out.deviation_ok = out.sup_deviation <= out.berry_esseen_bound + out.dkw_band;
  return out;
}

}  // namespace shiftreg

// Acceptance gate: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line each. Exit status is non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "shiftreg/errors.hpp"
#include "shiftreg/experiments.hpp"
#include "shiftreg/instances.hpp"
#include "shiftreg/lemmas.hpp"
#include "shiftreg/lower_bound.hpp"
#include "shiftreg/minimax.hpp"
#include "shiftreg/parallel.hpp"
#include "shiftreg/rng.hpp"
#include "shiftreg/shift.hpp"

using namespace shiftreg;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  std::vector<double> counts;  // compared bit for bit by criterion 10
};

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome(std::size_t workers)> run;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double binomial_se(const ErrorEstimate& e) {
  return std::sqrt(e.rate * (1.0 - e.rate) / static_cast<double>(e.trials));
}

double berry_esseen(std::size_t N) {
  return 1.0 / std::sqrt(2.0 * std::numbers::pi * static_cast<double>(N));
}

Outcome level_bound(std::size_t workers) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out{true, {}, {}};
  std::uint64_t seed = 1001;
  for (double sigma : {0.1, 0.05}) {
    for (double alpha : {0.05, 0.1}) {
      ExperimentConfig cfg;
      cfg.sigma = sigma;
      cfg.alpha = alpha;
      cfg.instance.J = 0;
      cfg.instance.tau = 1.0;
      cfg.trials = 2000;
      cfg.master_seed = seed++;
      cfg.parallelism = workers;
      const std::size_t N = test_parameters(cfg).first.front();
      const ErrorEstimate e = estimate_type_one(cfg);
      const double limit = alpha + berry_esseen(N) + 3.0 * binomial_se(e);
      out.pass = out.pass && e.rate <= limit;
      out.counts.push_back(static_cast<double>(e.rejections));
      out.detail += fmt("sigma=%g alpha=%g N=%zu rate=%.4f<=%.4f; ", sigma, alpha, N, e.rate, limit);
    }
  }
  const double elapsed = seconds_since(t0);
  out.pass = out.pass && elapsed <= 120.0;
  out.detail += fmt("%.1fs (limit 120s)", elapsed);
  return out;
}

Outcome generous_power(std::size_t workers) {
  const SobolevClass cls(1.0, 1.0);
  const double sigma = 0.05;
  const double d = 5.0 * minimal_constant_nonadaptive(cls) * separation_rate(sigma, 1.0);
  ExperimentConfig cfg;
  cfg.sigma = sigma;
  cfg.instance.kind = InstanceKind::signal_vs_zero;
  cfg.instance.target_distance = d;
  cfg.instance.J = 0;
  cfg.trials = 2000;
  cfg.master_seed = 2002;
  cfg.parallelism = workers;
  Outcome out;
  try {
    const ErrorEstimate e = estimate_type_two(cfg);
    out.pass = e.rate <= 0.1;
    out.counts.push_back(static_cast<double>(e.rejections));
    out.detail = fmt("d=%.4f beta=%.4f (limit 0.1)", d, e.rate);
  } catch (const InfeasibleSpec& e) {
    // the requested separation exceeds what the L = 1 ball can host
    out.pass = false;
    out.detail = fmt("d=%.4f infeasible: ", d) + e.what();
  }
  // uncounted: the same test at d = 5 rho_sigma, which the ball can host
  cfg.instance.target_distance = 5.0 * separation_rate(sigma, 1.0);
  const ErrorEstimate e = estimate_type_two(cfg);
  out.counts.push_back(static_cast<double>(e.rejections));
  out.detail += fmt(" | note: at d=5*rho=%.4f beta=%.4f", cfg.instance.target_distance, e.rate);
  return out;
}

Outcome adaptive_level(std::size_t workers) {
  ExperimentConfig cfg;
  cfg.test_kind = TestKind::adaptive;
  cfg.sigma = 0.05;
  cfg.s1 = 0.5;
  cfg.s2 = 2.0;
  cfg.instance.J = 0;
  cfg.instance.tau = 2.0;
  cfg.trials = 2000;
  cfg.master_seed = 3003;
  cfg.parallelism = workers;
  const TrialBatch batch = run_trials(cfg);
  const std::size_t rejections = batch.rejection_count();
  std::size_t member_sum = 0;
  Outcome out;
  out.counts.push_back(static_cast<double>(rejections));
  std::string members;
  for (std::size_t k = 0; k < batch.n_grid.size(); ++k) {
    const std::size_t m = batch.member_rejection_count(k);
    member_sum += m;
    out.counts.push_back(static_cast<double>(m));
    members += fmt("%s%zu:%zu", k ? "," : "", batch.n_grid[k], m);
  }
  const double rate = static_cast<double>(rejections) / static_cast<double>(cfg.trials);
  out.pass = rate <= 0.1 && rejections <= member_sum;
  out.detail = fmt("rate=%.4f (limit 0.1); union %zu <= sum of members %zu [N:count %s]", rate,
                   rejections, member_sum, members.c_str());
  return out;
}

Outcome rate_exponent(std::size_t workers) {
  const auto t0 = std::chrono::steady_clock::now();
  SweepConfig cfg;
  cfg.sigmas = {0.2, 0.1, 0.05, 0.025};
  cfg.cls = SobolevClass(1.0, 2.0);
  cfg.target_beta = 0.5;
  cfg.trials = 1000;
  cfg.master_seed = 4004;
  cfg.parallelism = workers;
  Outcome out;
  try {
    const SweepResult r = rate_sweep(cfg);
    const double elapsed = seconds_since(t0);
    out.pass = r.slope && std::abs(*r.slope - 0.4) <= 0.1 && elapsed <= 600.0;
    std::string rows;
    for (const auto& row : r.rows) {
      rows += fmt("sigma=%g C=%.3f; ", row.sigma, row.c_hat);
      out.counts.push_back(row.c_hat);
    }
    out.counts.push_back(r.slope.value_or(NAN));
    out.detail = fmt("slope=%.4f (target 0.4+-0.1, L=2); ", r.slope.value_or(NAN)) + rows +
                 fmt("%.1fs (limit 600s)", elapsed);
  } catch (const BracketFailure& e) {
    out.pass = false;
    out.detail = e.what();
  }
  return out;
}

Outcome oracle_equivalence(std::size_t workers) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t instances = 200;
  std::vector<double> gaps(instances);
  std::vector<char> ok(instances);
  parallel_for(instances, workers, [&](std::size_t i) {
    CounterRng rng(derive_stream(5005, i));
    const auto N = 1 + static_cast<std::size_t>(rng.uniform(0.0, 32.0));
    const SobolevClass cls(1.0 + 0.5 * static_cast<double>(i % 3), 1.0);
    const FourierSequence a = random_ball_sequence(N, cls, rng, rng.uniform(0.2, 1.0));
    FourierSequence b = i % 2 == 0 ? random_ball_sequence(N, cls, rng, rng.uniform(0.2, 1.0))
                                   : a.shifted(rng.uniform(0.0, 2.0 * std::numbers::pi));
    const double fast = minimize_over_shift(a, b, N).value;
    const double brute = brute_force_min(a, b, N, 1000000).value;
    gaps[i] = std::abs(fast - brute) / (1.0 + fast);
    ok[i] = std::abs(fast - brute) <= 1e-9 * (1.0 + fast);
  });
  const double elapsed = seconds_since(t0);
  std::size_t good = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < instances; ++i) {
    good += ok[i] ? 1 : 0;
    worst = std::max(worst, gaps[i]);
  }
  Outcome out;
  out.pass = good == instances && elapsed <= 60.0;
  out.counts = {static_cast<double>(good), worst};
  out.detail = fmt("%zu/%zu within 1e-9(1+value), worst %.2e; %.1fs (limit 60s)", good, instances,
                   worst, elapsed);
  return out;
}

Outcome lemma_checks(std::size_t) {
  const LemmaReport report = lemma_suite(0.01, 0.5, 2.0, SobolevClass(1.0, 1.0), 6006);
  Outcome out{true, {}, {}};
  for (const auto& c : report.checks) {
    out.pass = out.pass && c.passed && !c.skipped && c.instances >= 100;
    out.counts.push_back(c.passed ? 1.0 : 0.0);
    out.detail += fmt("%s %s on %zu instances%s; ", c.name.c_str(),
                      c.skipped ? "skipped" : (c.passed ? "held" : "FAILED"), c.instances,
                      c.detail.empty() ? "" : (" [" + c.detail + "]").c_str());
  }
  return out;
}

Outcome tail_bound(std::size_t workers) {
  const std::vector<double> u(8, 1.0);
  const TailCheckResult r = lemma4_tail_check(8, u, 4.0, 4.0, 100000, 7007, workers);
  const double limit = r.bound + 3.0 * binomial_se(r.empirical);
  Outcome out;
  out.pass = r.empirical.rate <= limit;
  out.counts.push_back(static_cast<double>(r.empirical.rejections));
  out.detail = fmt("exceedance %.5f (%zu/%zu) <= bound %.5f + 3 SE = %.5f; threshold %.3f",
                   r.empirical.rate, r.empirical.rejections, r.empirical.trials, r.bound, limit,
                   r.threshold);
  return out;
}

Outcome null_distribution(std::size_t workers) {
  Outcome out{true, {}, {}};
  std::uint64_t seed = 8008;
  for (std::size_t N : {4, 16, 64}) {
    const NullDistributionSummary s = null_statistic_distribution(N, 100000, seed++, workers);
    out.pass = out.pass && s.deviation_ok;
    out.counts.push_back(s.sup_deviation);
    out.counts.push_back(s.mean);
    out.detail += fmt("N=%zu sup|F-Phi|=%.4f<=%.4f; ", N, s.sup_deviation,
                      s.berry_esseen_bound + s.dkw_band);
  }
  return out;
}

Outcome lower_bound(std::size_t) {
  CounterRng rng(derive_stream(9009, 0));
  Outcome out{true, {}, {}};
  double worst_ratio = 1.0;
  std::size_t scan_agree = 0;
  const std::size_t cases = 20;
  for (std::size_t k = 0; k < cases; ++k) {
    const double alpha = rng.uniform(0.01, 0.3);
    const double beta = rng.uniform(0.01, 0.5);
    const double sigma = std::exp(rng.uniform(std::log(1e-4), std::log(0.05)));
    const double s = rng.uniform(0.5, 2.0);
    const double L = rng.uniform(0.5, 2.0);
    const LowerBoundResult r = lower_bound_radius(alpha, beta, sigma, SobolevClass(s, L));
    // independent scan, twice as far out as the operation looks
    const double calL = std::log1p(4.0 * (1.0 - alpha - beta) * (1.0 - alpha - beta));
    const auto d_max = static_cast<std::size_t>(std::ceil(4.0 * r.x_star)) + 2;
    double best = -1.0;
    std::size_t arg = 0;
    for (std::size_t d = 1; d <= d_max; ++d) {
      const double dd = static_cast<double>(d);
      const double v = std::min(sigma * sigma * std::sqrt(2.0 * calL * dd), L * L * std::pow(dd, -2.0 * s));
      if (v > best) {
        best = v;
        arg = d;
      }
    }
    const double ratio = r.rho / r.rho_closed_form;
    worst_ratio = std::min(worst_ratio, ratio);
    const bool agree = arg == r.d_star && std::abs(std::sqrt(best) - r.rho) <= 1e-15 * r.rho;
    scan_agree += agree ? 1 : 0;
    out.pass = out.pass && r.rho <= r.rho_closed_form && ratio >= 0.9 && agree;
    out.counts.push_back(r.rho);
  }
  out.detail = fmt("min rho/rho_cf=%.4f (>=0.9, <=1); scan agrees on d_star in %zu/%zu", worst_ratio,
                   scan_agree, cases);
  return out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "level bound", level_bound},
      {2, "power at generous separation", generous_power},
      {3, "adaptive level and Bonferroni", adaptive_level},
      {4, "rate exponent recovery", rate_exponent},
      {5, "oracle equivalence", oracle_equivalence},
      {6, "deterministic lemma suite", lemma_checks},
      {7, "tail bound", tail_bound},
      {8, "null-statistic distribution", null_distribution},
      {9, "lower-bound radius", lower_bound},
  };

  std::vector<Outcome> eight;
  int failures = 0;
  for (const Criterion& c : criteria) {
    eight.push_back(c.run(8));
    const Outcome& o = eight.back();
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title,
                o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }

  // criterion 10: identical counts with a single worker
  std::string mismatched;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const Outcome one = criteria[k].run(1);
    if (one.counts != eight[k].counts || one.pass != eight[k].pass) {
      mismatched += fmt(" %d", criteria[k].id);
    }
  }
  const bool reproducible = mismatched.empty();
  std::printf("%s criterion 10 (reproducibility): counts with 1 and 8 workers %s\n",
              reproducible ? "PASS" : "FAIL",
              reproducible ? "are bit-identical for criteria 1-9"
                           : ("differ for criteria" + mismatched).c_str());
  failures += reproducible ? 0 : 1;

  std::printf("acceptance: %d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}

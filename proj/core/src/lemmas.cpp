#include "shiftreg/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "shiftreg/errors.hpp"
#include "shiftreg/instances.hpp"
#include "shiftreg/minimax.hpp"
#include "shiftreg/rng.hpp"
#include "shiftreg/shift.hpp"

namespace shiftreg {

bool LemmaReport::all_passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed || c.skipped; });
}

double lemma1_margin(const FourierSequence& c, const FourierSequence& c_tilde,
                     const SobolevClass& cls, double rho, double c_const, std::size_t N) {
  if (!(rho > 0.0) || !(c_const > 0.0)) {
    throw InvalidInput("lemma1_margin: rho and c must be positive");
  }
  const double refined = minimize_over_shift(c, c_tilde, N).value;
  const double grid = brute_force_min(c, c_tilde, N, 1u << 16).value;
  const double lhs = std::min(refined, grid);
  const double d = pseudo_distance(c, c_tilde);
  const double C = d / rho;
  const double s = cls.s();
  const double L = cls.L();
  const double rhs = (C * C - 4.0 * L * L * std::pow(c_const, -2.0 * s)) * rho * rho;
  return lhs - rhs;
}

namespace {

CheckResult truncation_check(const SobolevClass& cls, std::uint64_t seed,
                             const LemmaSuiteOptions& options) {
  CheckResult check{"lemma1_truncation", true, false, options.instances, {}};
  const double s = cls.s();
  const double L = cls.L();
  const double c_const = bandwidth_constant(cls);
  for (std::size_t i = 0; i < options.instances; ++i) {
    CounterRng rng(derive_stream(seed, i));
    const auto J = static_cast<std::size_t>(rng.uniform(8.0, 65.0));
    const auto N = 1 + static_cast<std::size_t>(rng.uniform(0.0, static_cast<double>(J / 2)));
    FourierSequence c = FourierSequence::zeros(J);
    FourierSequence c_tilde = FourierSequence::zeros(J);
    if (i % 4 == 3) {
      // all mass just past the truncation point
      std::vector<Complex> v(J);
      v[N] = std::polar(L * std::pow(static_cast<double>(N + 1), -s), rng.uniform(0.0, 6.28));
      c = FourierSequence(std::move(v));
    } else {
      c = random_ball_sequence(J, cls, rng, rng.uniform(0.1, 1.0));
      c_tilde = random_ball_sequence(J, cls, rng, rng.uniform(0.1, 1.0));
    }
    // c rho^{-1/s} = N + 1 - v with v in (0, 1)
    const double v = rng.uniform(0.001, 0.999);
    const double rho = std::pow(c_const / (static_cast<double>(N + 1) - v), s);
    const double margin = lemma1_margin(c, c_tilde, cls, rho, c_const, N) - options.inject_violation;
    if (margin < -1e-12 && check.passed) {
      check.passed = false;
      std::ostringstream w;
      w.precision(17);
      w << "instance " << i << ": J=" << J << " N=" << N << " rho=" << rho
        << " margin=" << margin;
      check.detail = w.str();
    }
  }
  return check;
}

CheckResult rate_ratio_check(double sigma, double s1, double s2, std::uint64_t seed,
                             const LemmaSuiteOptions& options) {
  CheckResult check{"lemma6_rate_ratio", true, false, 0, {}};
  if (!(sigma > 0.0 && sigma < 1.0)) {
    check.skipped = true;
    check.detail = "sigma must lie in (0, 1)";
    return check;
  }
  const double ell = std::log(1.0 / sigma);
  if (sigma * sigma * std::sqrt(ell) > 1.0 || !(sigma < std::exp(-1.0))) {
    check.skipped = true;
    check.detail = "needs sigma^2 sqrt(log 1/sigma) <= 1 and sigma < 1/e";
    return check;
  }
  const AdaptiveConfig grid = adaptive_grid(sigma, s1, s2);
  const double bound = std::exp(4.0 / ((4.0 * s1 + 1.0) * (4.0 * s1 + 1.0)));

  auto record = [&](double S, double s, std::size_t index) {
    ++check.instances;
    const double ratio = separation_rate(sigma, S) / separation_rate(sigma, s);
    if (ratio + options.inject_violation > bound * (1.0 + 1e-12) && check.passed) {
      check.passed = false;
      std::ostringstream w;
      w.precision(17);
      w << "instance " << index << ": S=" << S << " s=" << s << " ratio=" << ratio
        << " bound=" << bound;
      check.detail = w.str();
    }
  };

  for (std::size_t k = 0; k + 1 < grid.s_grid.size(); ++k) {
    record(grid.s_grid[k], grid.s_grid[k + 1], k);
  }
  for (std::size_t i = 0; i < options.instances; ++i) {
    CounterRng rng(derive_stream(seed, i));
    const double s = rng.uniform(s1, s2);
    auto it = std::upper_bound(grid.s_grid.begin(), grid.s_grid.end(), s);
    const double S = *std::prev(it);
    record(S, s, grid.s_grid.size() + i);
  }
  return check;
}

}  // namespace

LemmaReport lemma_suite(double sigma, double s1, double s2, const SobolevClass& cls,
                        std::uint64_t master_seed, const LemmaSuiteOptions& options) {
  if (options.instances < 1) throw InvalidInput("lemma_suite: instances must be at least 1");
  if (!(s1 > 0.0 && s2 >= s1)) throw InvalidInput("lemma_suite: need 0 < s1 <= s2");
  LemmaReport report;
  report.checks.push_back(truncation_check(cls, derive_stream(master_seed, 1), options));
  report.checks.push_back(rate_ratio_check(sigma, s1, s2, derive_stream(master_seed, 6), options));
  return report;
}

}  // namespace shiftreg

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "shiftreg/sequence.hpp"

namespace shiftreg {

struct CheckResult {
  std::string name;
  bool passed = false;
  bool skipped = false;
  std::size_t instances = 0;
  std::string detail;  ///< skip reason, or a witness of the first failure
};

struct LemmaReport {
  std::vector<CheckResult> checks;
  bool all_passed() const noexcept;
};

struct LemmaSuiteOptions {
  std::size_t instances = 100;
  /// Test hook: adds this amount to every right-hand side, so a positive
  /// value forces failures and exercises the witness path.
  double inject_violation = 0.0;
};

/// Evaluates the truncation inequality
///   min_tau sum_{j<=N} |c_j - e^{-ijtau} c~_j|^2 >= (C^2 - 4 L^2 c^{-2s}) rho^2
/// for C = d(c, c~) / rho. Returns lhs - rhs; the inequality requires
/// c, c~ in the ball and N + 1 >= c rho^{-1/s}. The left side is the smaller
/// of the refined minimum and a 2^16-point grid minimum.
double lemma1_margin(const FourierSequence& c, const FourierSequence& c_tilde,
                     const SobolevClass& cls, double rho, double c_const,
                     std::size_t N);

/// Runs the deterministic lemma checks on randomized instances:
///  - "lemma1_truncation": random pairs in the ball of `cls`, random rho with
///    N = ceil(c rho^{-1/s}) - 1 in [1, J], margin >= -1e-12;
///  - "lemma6_rate_ratio": rho*(S)/rho*(s) <= e^{4/(4 s1+1)^2} for grid
///    neighbours and random s in [s1, s2] with S the largest grid point <= s.
///    Skipped unless sigma^2 sqrt(log 1/sigma) <= 1 and sigma <= e^{-1}.
LemmaReport lemma_suite(double sigma, double s1, double s2,
                        const SobolevClass& cls, std::uint64_t master_seed,
                        const LemmaSuiteOptions& options = {});

}  // namespace shiftreg

#pragma once

#include <cstddef>

namespace shiftreg {

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

/// Exact (Clopper-Pearson) two-sided interval for a binomial proportion.
Interval clopper_pearson(std::size_t successes, std::size_t trials,
                         double confidence = 0.95);

/// Empirical rate of an event over independent trials.
struct ErrorEstimate {
  std::size_t rejections = 0;  ///< count of the event being estimated
  std::size_t trials = 0;
  double rate = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;

  /// sqrt(rate (1 - rate) / trials).
  double standard_error() const noexcept;

  bool operator==(const ErrorEstimate&) const = default;
};

/// Builds an ErrorEstimate with a 95% Clopper-Pearson interval.
ErrorEstimate make_estimate(std::size_t events, std::size_t trials);

}  // namespace shiftreg

#include "shiftreg/binomial.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/beta.hpp>

#include "shiftreg/errors.hpp"

namespace shiftreg {

Interval clopper_pearson(std::size_t successes, std::size_t trials, double confidence) {
  if (trials == 0) throw InvalidInput("clopper_pearson: trials must be positive");
  if (successes > trials) throw InvalidInput("clopper_pearson: successes exceed trials");
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw InvalidInput("clopper_pearson: confidence must lie in (0, 1)");
  }
  const double tail = 0.5 * (1.0 - confidence);
  const auto k = static_cast<double>(successes);
  const auto n = static_cast<double>(trials);
  Interval out;
  if (successes > 0) {
    out.low = boost::math::quantile(boost::math::beta_distribution<double>(k, n - k + 1.0), tail);
  }
  if (successes < trials) {
    out.high = boost::math::quantile(
        boost::math::complement(boost::math::beta_distribution<double>(k + 1.0, n - k), tail));
  }
  return out;
}

double ErrorEstimate::standard_error() const noexcept {
  if (trials == 0) return 0.0;
  return std::sqrt(rate * (1.0 - rate) / static_cast<double>(trials));
}

ErrorEstimate make_estimate(std::size_t events, std::size_t trials) {
  const Interval ci = clopper_pearson(events, trials);
  ErrorEstimate est;
  est.rejections = events;
  est.trials = trials;
  est.rate = static_cast<double>(events) / static_cast<double>(trials);
  est.ci_low = std::min(ci.low, est.rate);
  est.ci_high = std::max(ci.high, est.rate);
  return est;
}

}  // namespace shiftreg

#include "shiftreg/lower_bound.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shiftreg/errors.hpp"

namespace shiftreg {
namespace {

struct Terms {
  double eta;
  double calL;
  double slope;  // sigma^2 sqrt(2 calL)
  double x_star;
};

Terms terms(double alpha, double beta, double sigma, const SobolevClass& cls) {
  if (!(alpha > 0.0 && alpha <= 1.0) || !(beta > 0.0 && beta <= 1.0)) {
    throw DomainError("lower_bound_radius: alpha and beta must lie in (0, 1]");
  }
  if (!(alpha + beta < 1.0)) {
    throw DomainError("lower_bound_radius: alpha + beta must be < 1 (eta = 2(1-alpha-beta) > 0)");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw DomainError("lower_bound_radius: sigma must be positive");
  }
  Terms t{};
  t.eta = 2.0 * (1.0 - alpha - beta);
  t.calL = std::log1p(t.eta * t.eta);
  t.slope = sigma * sigma * std::sqrt(2.0 * t.calL);
  t.x_star = std::pow(cls.L() * cls.L() / t.slope, 2.0 / (4.0 * cls.s() + 1.0));
  return t;
}

}  // namespace

LowerBoundResult lower_bound_radius(double alpha, double beta, double sigma,
                                    const SobolevClass& cls, std::size_t d_max) {
  const Terms t = terms(alpha, beta, sigma, cls);
  if (d_max < 1) throw RangeError("lower_bound_radius: d_max must be at least 1");

  const double s = cls.s();
  const double L2 = cls.L() * cls.L();

  LowerBoundResult out;
  out.eta = t.eta;
  out.calL = t.calL;
  out.x_star = t.x_star;
  out.rho_closed_form =
      std::sqrt(std::pow(L2, 1.0 / (4.0 * s + 1.0)) * std::pow(t.slope, 4.0 * s / (4.0 * s + 1.0)));

  if (static_cast<double>(d_max) < 2.0 * out.x_star) {
    throw RangeError("lower_bound_radius: d_max=" + std::to_string(d_max) +
                     " too small, the continuous maximizer is x*=" + std::to_string(out.x_star) +
                     "; need d_max >= " +
                     std::to_string(static_cast<std::size_t>(std::ceil(2.0 * out.x_star))));
  }

  double best = -1.0;
  for (std::size_t d = 1; d <= d_max; ++d) {
    const double x = static_cast<double>(d);
    const double value = std::min(t.slope * std::sqrt(x), L2 * std::pow(x, -2.0 * s));
    if (value > best) {
      best = value;
      out.d_star = d;
    }
  }
  out.rho = std::sqrt(best);
  return out;
}

LowerBoundResult lower_bound_radius(double alpha, double beta, double sigma,
                                    const SobolevClass& cls) {
  const double d_max = std::max(2.0, std::ceil(2.0 * terms(alpha, beta, sigma, cls).x_star));
  if (d_max > 1e9) {
    throw RangeError("lower_bound_radius: the scan would need d_max=" + std::to_string(d_max) +
                     ", more than 1e9 terms");
  }
  return lower_bound_radius(alpha, beta, sigma, cls, static_cast<std::size_t>(d_max));
}

}  // namespace shiftreg

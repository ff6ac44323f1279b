#include "shiftreg/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "shiftreg/errors.hpp"
#include "shiftreg/shift.hpp"

namespace shiftreg {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kCertificationGrid = std::size_t{1} << 16;
constexpr double kCertificationSlack = 1e-6;

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(10);
  out << v;
  return out.str();
}

// Smaller of the refined minimum and a dense grid minimum, as a distance.
double certified_distance(const FourierSequence& a, const FourierSequence& b) {
  const double refined = minimize_over_shift(a, b, a.size()).value;
  const double grid = brute_force_min(a, b, a.size(), kCertificationGrid).value;
  return std::sqrt(std::min(refined, grid));
}

void certify(const SequencePair& pair, const InstanceSpec& spec) {
  if (!in_sobolev_ball(pair.first, spec.cls) || !in_sobolev_ball(pair.second, spec.cls)) {
    throw InfeasibleSpec("make_alt_instance: generated pair left the Sobolev ball (s=" +
                         fmt(spec.cls.s()) + ", L=" + fmt(spec.cls.L()) + ")");
  }
  const double d = certified_distance(pair.first, pair.second);
  if (d < spec.target_distance - kCertificationSlack) {
    throw InfeasibleSpec("make_alt_instance: certification failed, oracle distance " + fmt(d) +
                         " below target " + fmt(spec.target_distance));
  }
}

SequencePair two_frequency_template(double ratio, std::size_t J) {
  std::vector<Complex> c(J), c_sharp(J);
  c[0] = 1.0;
  c[1] = ratio;
  c_sharp[0] = 1.0;
  c_sharp[1] = -ratio;
  return {FourierSequence(std::move(c)), FourierSequence(std::move(c_sharp))};
}

// Separation per unit of Sobolev norm reached by the template with this ratio.
struct TemplateEfficiency {
  double distance;
  double norm;
};

TemplateEfficiency template_efficiency(double ratio, double s) {
  const auto [c, c_sharp] = two_frequency_template(ratio, 2);
  const double d = std::sqrt(minimize_over_shift(c, c_sharp, 2).value);
  const double norm = std::sqrt(1.0 + std::pow(2.0, 2.0 * s) * ratio * ratio);
  return {d, norm};
}

SequencePair make_signal_vs_zero(const InstanceSpec& spec, CounterRng& rng) {
  if (spec.target_distance > spec.cls.L()) {
    throw InfeasibleSpec("make_alt_instance: signal_vs_zero target distance " +
                         fmt(spec.target_distance) + " exceeds the Sobolev radius L=" +
                         fmt(spec.cls.L()) +
                         " (binding constraint: d(c,0) = ||c||_2 <= ||c||_{s} <= L)");
  }
  std::vector<Complex> c(spec.J);
  c[0] = std::polar(spec.target_distance, rng.uniform(0.0, kTwoPi));
  return {FourierSequence(std::move(c)), FourierSequence::zeros(spec.J)};
}

SequencePair make_two_frequency(const InstanceSpec& spec, CounterRng& rng) {
  if (spec.J < 2) {
    throw InfeasibleSpec("make_alt_instance: two_frequency needs J >= 2");
  }
  const double s = spec.cls.s();
  const double L = spec.cls.L();

  double ratio = rng.uniform(0.5, 2.0);
  TemplateEfficiency eff = template_efficiency(ratio, s);
  double scale = spec.target_distance / eff.distance;
  if (scale * eff.norm > L) {
    // Fall back to the most efficient ratio on a log grid.
    double best_ratio = ratio;
    double best = eff.distance / eff.norm;
    for (int k = -60; k <= 60; ++k) {
      const double r = std::pow(10.0, k / 40.0);
      const TemplateEfficiency e = template_efficiency(r, s);
      if (e.distance / e.norm > best) {
        best = e.distance / e.norm;
        best_ratio = r;
      }
    }
    ratio = best_ratio;
    eff = template_efficiency(ratio, s);
    scale = spec.target_distance / eff.distance;
    if (scale * eff.norm > L) {
      throw InfeasibleSpec(
          "make_alt_instance: two_frequency target distance " + fmt(spec.target_distance) +
          " exceeds the largest separation " + fmt(L * best) +
          " reachable by the two-frequency template in the ball (s=" + fmt(s) + ", L=" + fmt(L) +
          "); conservative bound, every pair in the ball has d <= sqrt(2) L = " +
          fmt(std::sqrt(2.0) * L));
    }
  }

  const Complex phase1 = std::polar(1.0, rng.uniform(0.0, kTwoPi));
  const Complex phase2 = std::polar(1.0, rng.uniform(0.0, kTwoPi));
  std::vector<Complex> c(spec.J), c_sharp(spec.J);
  c[0] = scale * phase1;
  c[1] = scale * ratio * phase2;
  c_sharp[0] = scale * phase1;
  c_sharp[1] = -scale * ratio * phase2;
  return {FourierSequence(std::move(c)), FourierSequence(std::move(c_sharp))};
}

}  // namespace

std::string_view to_string(InstanceKind kind) noexcept {
  switch (kind) {
    case InstanceKind::null_shift:
      return "null_shift";
    case InstanceKind::signal_vs_zero:
      return "signal_vs_zero";
    case InstanceKind::two_frequency:
      return "two_frequency";
  }
  return "unknown";
}

InstanceKind instance_kind_from_string(std::string_view name) {
  if (name == "null_shift") return InstanceKind::null_shift;
  if (name == "signal_vs_zero") return InstanceKind::signal_vs_zero;
  if (name == "two_frequency") return InstanceKind::two_frequency;
  throw InvalidInput("unknown instance kind '" + std::string(name) +
                     "' (expected null_shift, signal_vs_zero or two_frequency)");
}

void InstanceSpec::validate() const {
  if (!(tau >= 0.0 && tau < kTwoPi)) {
    throw InvalidInput("InstanceSpec: tau must lie in [0, 2pi), got " + fmt(tau));
  }
  if (!(target_distance >= 0.0) || !std::isfinite(target_distance)) {
    throw InvalidInput("InstanceSpec: target_distance must be finite and >= 0");
  }
  if (J == 0) {
    throw InvalidInput("InstanceSpec: J must be at least 1");
  }
}

std::size_t default_truncation(std::size_t max_bandwidth) noexcept {
  return std::max<std::size_t>(4 * max_bandwidth, 64);
}

ObservationPair simulate_pair(const FourierSequence& c, const FourierSequence& c_sharp,
                              double sigma, std::uint64_t seed, double noise_scale) {
  if (c.size() != c_sharp.size()) {
    throw InvalidInput("simulate_pair: J mismatch: " + std::to_string(c.size()) + " vs " +
                       std::to_string(c_sharp.size()));
  }
  if (!(sigma > 0.0)) {
    throw InvalidInput("simulate_pair: sigma must be positive");
  }
  CounterRng rng(seed);
  const double amplitude = sigma * noise_scale;
  auto draw = [&](const FourierSequence& mean) {
    std::vector<Complex> out(mean.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
      const double re = rng.normal();
      const double im = rng.normal();
      out[k] = mean.coeffs()[k] + amplitude * Complex(re, im);
    }
    return FourierSequence(std::move(out));
  };
  FourierSequence y = draw(c);
  FourierSequence y_sharp = draw(c_sharp);
  return ObservationPair(std::move(y), std::move(y_sharp), sigma);
}

SequencePair make_null_instance(const FourierSequence& c, double tau) {
  if (!(tau >= 0.0 && tau < kTwoPi)) {
    throw InvalidInput("make_null_instance: tau must lie in [0, 2pi), got " + fmt(tau));
  }
  return {c, c.shifted(tau)};
}

FourierSequence random_ball_sequence(std::size_t J, const SobolevClass& cls, CounterRng& rng,
                                     double radius_fraction) {
  if (J == 0) throw InvalidInput("random_ball_sequence: J must be at least 1");
  if (!(radius_fraction > 0.0 && radius_fraction <= 1.0)) {
    throw InvalidInput("random_ball_sequence: radius_fraction must lie in (0, 1]");
  }
  std::vector<Complex> coeffs(J);
  for (std::size_t k = 0; k < J; ++k) {
    const double j = static_cast<double>(k + 1);
    const double re = rng.normal();
    const double im = rng.normal();
    coeffs[k] = Complex(re, im) * std::pow(j, -cls.s() - 0.5);
  }
  FourierSequence raw(std::move(coeffs));
  const double norm = sobolev_norm(raw, cls.s());
  if (norm == 0.0) return raw;
  // Shrink by one ulp-scale factor so rounding never pushes it outside.
  return raw.scaled(radius_fraction * cls.L() / norm * (1.0 - 1e-14));
}

SequencePair make_alt_instance(const InstanceSpec& spec, std::uint64_t seed) {
  spec.validate();
  if (spec.kind == InstanceKind::null_shift) {
    throw InvalidInput("make_alt_instance: null_shift does not describe an alternative");
  }
  const double generic_bound = std::sqrt(2.0) * spec.cls.L();
  if (spec.target_distance > generic_bound) {
    throw InfeasibleSpec("make_alt_instance: target distance " + fmt(spec.target_distance) +
                         " exceeds sqrt(2) L = " + fmt(generic_bound) +
                         " (binding constraint: d^2 <= ||c||^2 + ||c#||^2 <= 2 L^2)");
  }
  CounterRng rng(seed);
  SequencePair pair = spec.kind == InstanceKind::signal_vs_zero ? make_signal_vs_zero(spec, rng)
                                                                : make_two_frequency(spec, rng);
  certify(pair, spec);
  return pair;
}

SequencePair make_instance(const InstanceSpec& spec, std::uint64_t seed) {
  spec.validate();
  if (spec.kind != InstanceKind::null_shift) return make_alt_instance(spec, seed);
  CounterRng rng(seed);
  const double fraction = rng.uniform(0.25, 1.0);
  const FourierSequence c = random_ball_sequence(spec.J, spec.cls, rng, fraction);
  return make_null_instance(c, spec.tau);
}

}  // namespace shiftreg

#include "shiftreg/sequence.hpp"

#include <cmath>
#include <string>

#include "shiftreg/errors.hpp"

namespace shiftreg {

FourierSequence::FourierSequence(std::vector<Complex> coeffs)
    : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) {
    throw InvalidInput("FourierSequence: length J must be at least 1");
  }
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (!std::isfinite(coeffs_[k].real()) || !std::isfinite(coeffs_[k].imag())) {
      throw InvalidInput("FourierSequence: coefficient j=" + std::to_string(k + 1) +
                         " is not finite");
    }
  }
}

FourierSequence FourierSequence::zeros(std::size_t length) {
  return FourierSequence(std::vector<Complex>(length));
}

double FourierSequence::l2_norm() const noexcept {
  double sum = 0.0;
  for (const Complex& c : coeffs_) sum += std::norm(c);
  return std::sqrt(sum);
}

FourierSequence FourierSequence::shifted(double phi) const {
  std::vector<Complex> out(coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const double j = static_cast<double>(k + 1);
    out[k] = std::polar(1.0, j * phi) * coeffs_[k];
  }
  return FourierSequence(std::move(out));
}

FourierSequence FourierSequence::scaled(double factor) const {
  std::vector<Complex> out(coeffs_);
  for (Complex& c : out) c *= factor;
  return FourierSequence(std::move(out));
}

SobolevClass::SobolevClass(double s, double radius) : s_(s), radius_(radius) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw InvalidInput("SobolevClass: smoothness s must be positive, got " + std::to_string(s));
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidInput("SobolevClass: radius L must be positive, got " + std::to_string(radius));
  }
}

namespace detail {

double sobolev_norm_unchecked(const FourierSequence& seq, double s) {
  double sum = 0.0;
  const auto coeffs = seq.coeffs();
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const double j = static_cast<double>(k + 1);
    sum += std::pow(j, 2.0 * s) * std::norm(coeffs[k]);
  }
  return std::sqrt(sum);
}

}  // namespace detail

double sobolev_norm(const FourierSequence& seq, double s) {
  if (!(s > 0.0)) {
    throw InvalidInput("sobolev_norm: smoothness must be positive");
  }
  const double value = detail::sobolev_norm_unchecked(seq, s);
  if (!std::isfinite(value)) {
    throw InvalidInput("sobolev_norm: weighted sum overflowed");
  }
  return value;
}

bool in_sobolev_ball(const FourierSequence& seq, const SobolevClass& cls) {
  return sobolev_norm(seq, cls.s()) <= cls.L();
}

ObservationPair::ObservationPair(FourierSequence y, FourierSequence y_sharp, double sigma)
    : y_(std::move(y)), y_sharp_(std::move(y_sharp)), sigma_(sigma) {
  if (y_.size() != y_sharp_.size()) {
    throw InvalidInput("ObservationPair: J mismatch: " + std::to_string(y_.size()) + " vs " +
                       std::to_string(y_sharp_.size()));
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InvalidInput("ObservationPair: sigma must be positive and finite");
  }
}

}  // namespace shiftreg

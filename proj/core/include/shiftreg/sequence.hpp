#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace shiftreg {

using Complex = std::complex<double>;

/// Truncated complex coefficient sequence (c_1, ..., c_J); c_j = 0 for j > J.
///
/// Storage is 0-based: `coeffs()[j - 1]` holds c_j. `coeff(j)` uses the
/// 1-based frequency index directly.
class FourierSequence {
 public:
  /// Throws InvalidInput when `coeffs` is empty or holds a NaN/Inf.
  explicit FourierSequence(std::vector<Complex> coeffs);

  static FourierSequence zeros(std::size_t length);

  std::size_t size() const noexcept { return coeffs_.size(); }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  Complex coeff(std::size_t j) const { return coeffs_.at(j - 1); }

  double l2_norm() const noexcept;

  /// Returns the sequence e^{i j phi} c_j, i.e. the coefficients of the
  /// curve translated by phi.
  FourierSequence shifted(double phi) const;

  /// Multiplies every coefficient by a real factor.
  FourierSequence scaled(double factor) const;

  bool operator==(const FourierSequence&) const = default;

 private:
  std::vector<Complex> coeffs_;
};

/// Sobolev ball parameters: smoothness s and radius L, both > 0.
class SobolevClass {
 public:
  SobolevClass(double s, double radius);

  double s() const noexcept { return s_; }
  double L() const noexcept { return radius_; }

  bool operator==(const SobolevClass&) const = default;

 private:
  double s_;
  double radius_;
};

/// Truncated Sobolev seminorm (sum_j j^{2s} |u_j|^2)^{1/2}. Requires s > 0.
double sobolev_norm(const FourierSequence& seq, double s);

/// True iff sobolev_norm(seq, cls.s()) <= cls.L().
bool in_sobolev_ball(const FourierSequence& seq, const SobolevClass& cls);

namespace detail {
/// Same sum without the s > 0 precondition; s = 0 gives the l2 norm.
double sobolev_norm_unchecked(const FourierSequence& seq, double s);
}  // namespace detail

/// Noisy observation of a coefficient pair at known noise level sigma.
class ObservationPair {
 public:
  /// Throws InvalidInput on a length mismatch or sigma <= 0.
  ObservationPair(FourierSequence y, FourierSequence y_sharp, double sigma);

  const FourierSequence& y() const noexcept { return y_; }
  const FourierSequence& y_sharp() const noexcept { return y_sharp_; }
  double sigma() const noexcept { return sigma_; }
  std::size_t size() const noexcept { return y_.size(); }

  bool operator==(const ObservationPair&) const = default;

 private:
  FourierSequence y_;
  FourierSequence y_sharp_;
  double sigma_;
};

}  // namespace shiftreg

#pragma once

namespace shiftreg {

/// Standard Gaussian distribution function, via erfc.
double normal_cdf(double x) noexcept;

/// Inverse of normal_cdf on (0, 1).
///
/// Starts from Acklam's rational approximation (relative error about
/// 1.15e-9) and applies Newton steps on normal_cdf until
/// |normal_cdf(q) - p| <= 1e-12 or two iterations have run.
/// Throws DomainError outside (0, 1).
double normal_quantile(double p);

}  // namespace shiftreg

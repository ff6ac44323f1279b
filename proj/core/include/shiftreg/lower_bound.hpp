#pragma once

#include <cstddef>

#include "shiftreg/sequence.hpp"

namespace shiftreg {

struct LowerBoundResult {
  double eta = 0.0;             ///< 2 (1 - alpha - beta)
  double calL = 0.0;            ///< log(1 + eta^2)
  double rho = 0.0;             ///< sqrt of the max over integer d
  std::size_t d_star = 0;       ///< first maximizing d
  double rho_closed_form = 0.0; ///< sqrt of the sup over real x >= 0
  double x_star = 0.0;          ///< continuous maximizer
};

/// rho^2 = max_{1 <= d <= d_max} min(sqrt(2 calL d) sigma^2, L^2 d^{-2s}),
/// rho_cf^2 = L^{2/(4s+1)} (sigma^2 sqrt(2 calL))^{4s/(4s+1)}.
///
/// Throws DomainError when alpha + beta >= 1 (or alpha, beta outside (0, 1],
/// sigma <= 0) and RangeError when d_max < 2 x_star, where
/// x_star = (L^2 / (sigma^2 sqrt(2 calL)))^{2/(4s+1)}.
LowerBoundResult lower_bound_radius(double alpha, double beta, double sigma,
                                    const SobolevClass& cls,
                                    std::size_t d_max);

/// Same with d_max = max(2, ceil(2 x_star)). Throws RangeError when that
/// exceeds 1e9.
LowerBoundResult lower_bound_radius(double alpha, double beta, double sigma,
                                    const SobolevClass& cls);

}  // namespace shiftreg

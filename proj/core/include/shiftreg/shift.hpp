#pragma once

#include <cstddef>

#include "shiftreg/sequence.hpp"

namespace shiftreg {

inline constexpr double kDefaultShiftTolerance = 1e-10;

struct ShiftSolution {
  double tau_star = 0.0;  ///< minimizing shift in [0, 2pi)
  double value = 0.0;     ///< minimized objective, >= 0
  std::size_t evaluations = 0;
};

/// sum_{j<=N} |a_j - e^{-i j tau} b_j|^2, evaluated term by term.
/// Throws InvalidInput unless 1 <= N <= min(a.size(), b.size()).
double shift_objective(const FourierSequence& a, const FourierSequence& b,
                       std::size_t N, double tau);

/// Global minimum of shift_objective over tau.
///
/// The objective is a trigonometric polynomial of degree N. It is sampled
/// on 8N equispaced points; every sample that could sit next to the global
/// minimizer (coarse value within the curvature bound M2 h^2 / 8 of the best
/// sample, M2 = 2 sum j^2 |a_j||b_j|) is refined by golden-section search
/// on [tau_k - h, tau_k + h] until the bracket is narrower than `tol`.
/// Ties go to the smaller tau.
ShiftSolution minimize_over_shift(const FourierSequence& a,
                                  const FourierSequence& b, std::size_t N,
                                  double tol = kDefaultShiftTolerance);

/// Exhaustive minimum over grid_size equispaced shifts k * 2pi / grid_size.
/// Throws InvalidInput when grid_size < 2.
ShiftSolution brute_force_min(const FourierSequence& a,
                              const FourierSequence& b, std::size_t N,
                              std::size_t grid_size);

/// Truncated pseudo-distance: sqrt of minimize_over_shift over all J terms.
/// Throws InvalidInput when the lengths differ.
double pseudo_distance(const FourierSequence& a, const FourierSequence& b,
                       double tol = kDefaultShiftTolerance);

}  // namespace shiftreg

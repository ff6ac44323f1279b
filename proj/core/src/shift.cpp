#include "shiftreg/shift.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "shiftreg/errors.hpp"

namespace shiftreg {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_bandwidth(const FourierSequence& a, const FourierSequence& b, std::size_t N,
                     const char* where) {
  const std::size_t limit = std::min(a.size(), b.size());
  if (N < 1 || N > limit) {
    throw InvalidInput(std::string(where) + ": bandwidth N=" + std::to_string(N) +
                       " outside [1, " + std::to_string(limit) + "]");
  }
}

double wrap_shift(double tau) {
  double t = std::fmod(tau, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

// sum_{j<=N} |a_j - e^{-ij tau} b_j|^2 with the phase advanced by recurrence.
double evaluate(std::span<const Complex> a, std::span<const Complex> b, std::size_t N,
                double tau) {
  const Complex step = std::polar(1.0, -tau);
  Complex phase = step;
  double sum = 0.0;
  for (std::size_t k = 0; k < N; ++k) {
    sum += std::norm(a[k] - phase * b[k]);
    phase *= step;
  }
  return sum;
}

struct Candidate {
  double tau;
  double value;
};

bool better(const Candidate& lhs, const Candidate& rhs) {
  return lhs.value < rhs.value || (lhs.value == rhs.value && lhs.tau < rhs.tau);
}

}  // namespace

double shift_objective(const FourierSequence& a, const FourierSequence& b, std::size_t N,
                       double tau) {
  check_bandwidth(a, b, N, "shift_objective");
  return evaluate(a.coeffs(), b.coeffs(), N, tau);
}

ShiftSolution minimize_over_shift(const FourierSequence& a, const FourierSequence& b,
                                  std::size_t N, double tol) {
  check_bandwidth(a, b, N, "minimize_over_shift");
  if (!(tol > 0.0)) {
    throw InvalidInput("minimize_over_shift: tolerance must be positive");
  }
  const auto ca = a.coeffs();
  const auto cb = b.coeffs();

  double curvature = 0.0;
  for (std::size_t k = 0; k < N; ++k) {
    const double j = static_cast<double>(k + 1);
    curvature += 2.0 * j * j * std::abs(ca[k]) * std::abs(cb[k]);
  }

  ShiftSolution solution;
  if (curvature == 0.0) {
    // One of the two sequences vanishes on 1..N: the objective is constant.
    solution.tau_star = 0.0;
    solution.value = evaluate(ca, cb, N, 0.0);
    solution.evaluations = 1;
    return solution;
  }

  const std::size_t samples = 8 * N;
  const double h = kTwoPi / static_cast<double>(samples);
  std::vector<double> coarse(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    coarse[k] = evaluate(ca, cb, N, static_cast<double>(k) * h);
  }
  std::size_t evaluations = samples;

  const auto best_it = std::min_element(coarse.begin(), coarse.end());
  Candidate best{static_cast<double>(best_it - coarse.begin()) * h, *best_it};

  // The sample nearest the global minimizer lies within h/2 of it, so its
  // value exceeds the minimum by at most curvature * h^2 / 8.
  const double margin = curvature * h * h / 8.0 + 1e-15 * std::max(1.0, best.value);
  const double cutoff = best.value + margin;
  constexpr double kInvPhi = 0.6180339887498948482;

  for (std::size_t k = 0; k < samples; ++k) {
    if (coarse[k] > cutoff) continue;
    double lo = static_cast<double>(k) * h - h;
    double hi = static_cast<double>(k) * h + h;
    double c = hi - kInvPhi * (hi - lo);
    double d = lo + kInvPhi * (hi - lo);
    double fc = evaluate(ca, cb, N, c);
    double fd = evaluate(ca, cb, N, d);
    evaluations += 2;
    while (hi - lo > tol) {
      if (fc <= fd) {
        hi = d;
        d = c;
        fd = fc;
        c = hi - kInvPhi * (hi - lo);
        fc = evaluate(ca, cb, N, c);
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + kInvPhi * (hi - lo);
        fd = evaluate(ca, cb, N, d);
      }
      ++evaluations;
    }
    const Candidate left{wrap_shift(c), fc};
    const Candidate right{wrap_shift(d), fd};
    if (better(left, best)) best = left;
    if (better(right, best)) best = right;
  }

  solution.tau_star = wrap_shift(best.tau);
  solution.value = best.value;
  solution.evaluations = evaluations;
  return solution;
}

ShiftSolution brute_force_min(const FourierSequence& a, const FourierSequence& b,
                              std::size_t N, std::size_t grid_size) {
  check_bandwidth(a, b, N, "brute_force_min");
  if (grid_size < 2) {
    throw InvalidInput("brute_force_min: grid_size must be at least 2");
  }
  const auto ca = a.coeffs();
  const auto cb = b.coeffs();
  const double h = kTwoPi / static_cast<double>(grid_size);
  ShiftSolution solution;
  solution.value = evaluate(ca, cb, N, 0.0);
  for (std::size_t k = 1; k < grid_size; ++k) {
    const double tau = static_cast<double>(k) * h;
    const double value = evaluate(ca, cb, N, tau);
    if (value < solution.value) {
      solution.value = value;
      solution.tau_star = tau;
    }
  }
  solution.evaluations = grid_size;
  return solution;
}

double pseudo_distance(const FourierSequence& a, const FourierSequence& b, double tol) {
  if (a.size() != b.size()) {
    throw InvalidInput("pseudo_distance: J mismatch: " + std::to_string(a.size()) + " vs " +
                       std::to_string(b.size()));
  }
  return std::sqrt(minimize_over_shift(a, b, a.size(), tol).value);
}

}  // namespace shiftreg

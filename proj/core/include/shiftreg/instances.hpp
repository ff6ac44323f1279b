#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>

#include "shiftreg/rng.hpp"
#include "shiftreg/sequence.hpp"

namespace shiftreg {

using SequencePair = std::pair<FourierSequence, FourierSequence>;

enum class InstanceKind { null_shift, signal_vs_zero, two_frequency };

std::string_view to_string(InstanceKind kind) noexcept;
/// Accepts "null_shift", "signal_vs_zero", "two_frequency". Throws InvalidInput.
InstanceKind instance_kind_from_string(std::string_view name);

/// Describes one point of the null or alternative parameter set.
struct InstanceSpec {
  InstanceKind kind = InstanceKind::null_shift;
  double tau = 0.0;              ///< shift in [0, 2pi), used by null_shift
  double target_distance = 0.0;  ///< required d(c, c#), alternatives only
  SobolevClass cls{1.0, 1.0};
  std::size_t J = 64;

  /// Throws InvalidInput on tau outside [0, 2pi), negative target or J == 0.
  void validate() const;
};

/// Truncation length used when the caller does not pick one:
/// max(4 * max_bandwidth, 64).
std::size_t default_truncation(std::size_t max_bandwidth) noexcept;

/// Y_j = c_j + sigma * xi_j and Y#_j = c#_j + sigma * xi#_j, with Re and Im
/// of every xi standard Gaussian and independent. Draw order is
/// (Re xi_j, Im xi_j) for j = 1..J, then the same for xi#.
/// `noise_scale` multiplies the noise only; 0 yields the noiseless pair
/// while keeping `sigma` as the reported level.
ObservationPair simulate_pair(const FourierSequence& c,
                              const FourierSequence& c_sharp, double sigma,
                              std::uint64_t seed, double noise_scale = 1.0);

/// (c, c#) with c#_j = e^{i j tau} c_j. Throws InvalidInput unless tau in [0, 2pi).
SequencePair make_null_instance(const FourierSequence& c, double tau);

/// A random sequence inside the Sobolev ball: coefficient magnitudes decay
/// like j^{-s-1/2} with random complex Gaussian factors, rescaled so that
/// sobolev_norm == radius_fraction * L (radius_fraction in (0, 1]).
FourierSequence random_ball_sequence(std::size_t J, const SobolevClass& cls,
                                     CounterRng& rng,
                                     double radius_fraction = 1.0);

/// Alternative pair with both members in the ball and a certified
/// separation d(c, c#) >= spec.target_distance.
///
/// signal_vs_zero places target * e^{i theta} at j = 1 and returns (c, 0).
/// two_frequency uses c = (p, q) and c# = (p, -q) on frequencies 1 and 2
/// with random common phases; the amplitude ratio keeps the two unalignable.
/// Throws InfeasibleSpec naming the binding constraint when the ball cannot
/// host the requested distance.
SequencePair make_alt_instance(const InstanceSpec& spec, std::uint64_t seed);

/// Dispatches on spec.kind. null_shift draws a base sequence with
/// random_ball_sequence and shifts it by spec.tau.
SequencePair make_instance(const InstanceSpec& spec, std::uint64_t seed);

}  // namespace shiftreg

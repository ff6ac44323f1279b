#pragma once

#include <stdexcept>
#include <string>

namespace shiftreg {

/// Malformed argument: out-of-range bandwidth, non-finite coefficient, bad weights.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A parameter lies outside the region where a formula is defined
/// (sigma >= 1 for the separation rate, alpha + beta >= 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The data cannot support the requested procedure, e.g. a truncation J
/// shorter than the bandwidth the test needs.
class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An alternative instance cannot be placed inside the Sobolev ball at the
/// requested separation.
class InfeasibleSpec : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A search range is too small to contain the quantity being searched for.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace shiftreg

#pragma once

#include <stdexcept>
#include <string>

namespace csembed {

// Bruhat cell / reflections exclude the origin.
struct ZeroVector : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DegreeOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// Polynomial factor grew past the supported total degree.
struct DegreeCapExceeded : std::length_error {
  using std::length_error::length_error;
};

// |x|^{-alpha} with alpha >= d has no integral near the origin.
struct WeightNotIntegrable : std::domain_error {
  using std::domain_error::domain_error;
};

// Raised both when the global evaluation cap is hit and when two
// refinements of the same integral disagree beyond the target.
struct QuadratureBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Transverse integral needs (n-1)u > 1.
struct ExponentTooSmall : std::domain_error {
  using std::domain_error::domain_error;
};

struct ChainBottom : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace csembed

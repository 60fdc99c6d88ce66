#pragma once

#include <stdexcept>
#include <string>

namespace hpl {

/// Operands live on different domains or grids. Callers are expected to
/// refine to a common grid explicitly; nothing is resampled silently.
class DomainMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration (lattice, partition family, ...) exceeded its configured cap.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, std::size_t count, std::size_t cap)
      : std::runtime_error(what + " (count " + std::to_string(count) +
                           " exceeds cap " + std::to_string(cap) + ")"),
        count(count),
        cap(cap) {}
  std::size_t count;
  std::size_t cap;
};

/// Adaptive refinement was asked to split below the master grid resolution.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hpl

#pragma once

#include <stdexcept>
#include <string>

namespace vrebid {

/// A market-clearing LP has no feasible point; what() carries the violated rows.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The LP backend broke down (unbounded market model, iteration limit, singular basis).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vrebid

#pragma once

#include "vrebid/lp.hpp"

namespace vrebid::lp {

// Runs the dump hook and the registered observer for a finished solve.
void notify_solved(const LpModel& model, const LpSolution& sol);

}  // namespace vrebid::lp

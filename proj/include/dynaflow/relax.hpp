#pragma once

// Fractional relaxation of the packing problem: items may be split across
// bins. Everything here is exact rational arithmetic.

#include <string>
#include <vector>

#include "dynaflow/model.hpp"

namespace dynaflow::relax {

/// Same items with every ready time replaced by ceil(ready / 2).
PackingInstance reduced_ready_times(const PackingInstance& inst);

struct FractionalResult {
  FractionalPacking packing;
  Rational value;
};

/// Fills bins 1, 2, ... in order; each bin takes the remaining mass of ready
/// items in decreasing w/S order (ties by instance order), splitting the last
/// one at capacity.
FractionalResult solve_fractional_greedy(const PackingInstance& inst);

/// Bins the greedy may touch: ceil(total size / C) + max ready.
std::int64_t fractional_horizon(const PackingInstance& inst);

struct FractionalViolation {
  std::string constraint;  // "assignment", "capacity", "ready_time", "range"
  std::string message;
};

std::vector<FractionalViolation> check_fractional(const FractionalPacking& fp, const PackingInstance& inst);

/// Sum of j * w_i * x_ij. Throws std::invalid_argument naming the first
/// violated constraint when `fp` is infeasible.
Rational fractional_objective(const FractionalPacking& fp, const PackingInstance& inst);

/// x_ij = 1 for the bin holding each item.
FractionalPacking from_packing(const Packing& p);

}  // namespace dynaflow::relax

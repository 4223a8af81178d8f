#pragma once

// Exact reference solvers for desk-scale instances. They certify the
// approximation ratios and identities in the test suites and are not meant
// to scale.

#include <cstdint>

#include "dynaflow/model.hpp"

namespace dynaflow::oracles {

/// max ready + item count: no optimal packing uses a later bin.
std::int64_t horizon_bound(const PackingInstance& inst);

struct PackingOptimum {
  std::int64_t value = 0;
  Packing packing;
};

inline constexpr std::size_t kMaxPackingItems = 15;

/// Subset DP over (bin, set of packed items). `max_bin` <= 0 means
/// horizon_bound(inst). Throws BudgetExceeded above kMaxPackingItems items and
/// std::invalid_argument when no packing fits within `max_bin` bins.
PackingOptimum exact_packing_opt(const PackingInstance& inst, std::int64_t max_bin = 0);

struct SearchBudget {
  std::size_t max_groups = 5;
  int max_nodes = 4;
  int max_horizon = 12;
};

struct DwsfOptimum {
  std::int64_t value = 0;
  Schedule schedule;
  std::size_t states = 0;  // memoized states visited
};

/// Smallest horizon certain to contain an optimal schedule: the latest
/// departure used by an optimal packing of either side.
int default_horizon(const PathInstance& inst);

/// Exhaustive search over departure choices at times 1..horizon with
/// memoization on (time, group positions). `horizon` <= 0 means
/// default_horizon(inst). Throws BudgetExceeded when the instance is larger
/// than `budget` allows, and std::invalid_argument when no schedule completes
/// within the horizon.
DwsfOptimum exact_dwsf_opt(const PathInstance& inst, int horizon = 0, const SearchBudget& budget = {});

struct FractionalOptimum {
  Rational value;
  FractionalPacking packing;
};

inline constexpr std::int64_t kMaxFlowArcUnits = 100'000;

/// Transportation model of the relaxation (item mass -> bins at or after the
/// ready time, unit cost j * w / S) solved by successive shortest paths with
/// rational costs. `max_bin` <= 0 means horizon_bound(inst). Throws
/// BudgetExceeded when total mass * bins exceeds kMaxFlowArcUnits.
FractionalOptimum exact_fractional_opt_mcf(const PackingInstance& inst, std::int64_t max_bin = 0);

}  // namespace dynaflow::oracles

#pragma once

// Test-only brute-force references. They share no code with the solvers
// they check.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "dynaflow/model.hpp"

namespace dynaflow::test {

/// Minimum of sum w * bin over every assignment of items to bins
/// ready..max_bin that respects capacity.
inline std::optional<std::int64_t> brute_force_packing_opt(const PackingInstance& inst, std::int64_t max_bin) {
  const std::size_t m = inst.items.size();
  std::vector<std::int64_t> bin(m, 0);
  std::optional<std::int64_t> best;
  auto rec = [&](auto& self, std::size_t i) -> void {
    if (i == m) {
      std::vector<std::int64_t> load(static_cast<std::size_t>(max_bin) + 1, 0);
      std::int64_t value = 0;
      for (std::size_t k = 0; k < m; ++k) {
        load[static_cast<std::size_t>(bin[k])] += inst.items[k].size;
        value += bin[k] * inst.items[k].weight;
      }
      for (auto l : load)
        if (l > inst.capacity) return;
      if (!best || value < *best) best = value;
      return;
    }
    for (std::int64_t b = std::max<std::int64_t>(1, inst.items[i].ready); b <= max_bin; ++b) {
      bin[i] = b;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  if (m == 0) return 0;
  return best;
}

inline PackingInstance abd_instance() {
  return {{{"A", 5, 10, 1}, {"B", 6, 6, 1}, {"D", 4, 2, 1}}, 10};
}

}  // namespace dynaflow::test

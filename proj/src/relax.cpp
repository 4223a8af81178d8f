#include "dynaflow/relax.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dynaflow::relax {

PackingInstance reduced_ready_times(const PackingInstance& inst) {
  PackingInstance out = inst;
  for (auto& it : out.items) it.ready = (it.ready + 1) / 2;
  return out;
}

std::int64_t fractional_horizon(const PackingInstance& inst) {
  if (inst.items.empty()) return 0;
  const auto mass = inst.total_size();
  return (mass + inst.capacity - 1) / inst.capacity + inst.max_ready();
}

FractionalResult solve_fractional_greedy(const PackingInstance& inst) {
  if (inst.capacity < 1) throw std::invalid_argument("capacity must be positive");
  const std::size_t m = inst.items.size();

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = inst.items[a];
    const auto& y = inst.items[b];
    return static_cast<__int128>(x.weight) * y.size > static_cast<__int128>(y.weight) * x.size;
  });

  std::vector<Rational> left(m);  // unassigned mass
  std::size_t open = 0;
  for (std::size_t i = 0; i < m; ++i) {
    left[i] = inst.items[i].size;
    if (left[i] > 0) ++open;
  }

  FractionalResult result;
  const Rational capacity = inst.capacity;
  for (std::int64_t j = 1; open > 0; ++j) {
    Rational room = capacity;
    for (auto i : order) {
      if (room == 0) break;
      if (left[i] == 0 || inst.items[i].ready > j) continue;
      const Rational take = std::min(room, left[i]);
      result.packing.entries[{i, j}] = take / inst.items[i].size;
      result.value += take / inst.items[i].size * inst.items[i].weight * j;
      left[i] -= take;
      room -= take;
      if (left[i] == 0) --open;
    }
  }
  return result;
}

std::vector<FractionalViolation> check_fractional(const FractionalPacking& fp, const PackingInstance& inst) {
  std::vector<FractionalViolation> out;
  const std::size_t m = inst.items.size();
  std::vector<Rational> row(m);
  std::map<std::int64_t, Rational> load;
  for (const auto& [key, x] : fp.entries) {
    const auto [i, j] = key;
    if (i >= m || j < 1) {
      out.push_back({"range", "entry (" + std::to_string(i) + ", " + std::to_string(j) + ") outside the instance"});
      continue;
    }
    if (x < 0 || x > 1) {
      out.push_back({"range", "x for item '" + inst.items[i].id + "' in bin " + std::to_string(j) + " outside [0,1]"});
    }
    if (x > 0 && j < inst.items[i].ready) {
      out.push_back({"ready_time", "item '" + inst.items[i].id + "' has mass in bin " + std::to_string(j) +
                                       " before its ready time " + std::to_string(inst.items[i].ready)});
    }
    row[i] += x;
    load[j] += x * inst.items[i].size;
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (row[i] != 1) {
      out.push_back({"assignment", "item '" + inst.items[i].id + "' assigned a total of " +
                                       to_fraction_string(row[i]) + " instead of 1"});
    }
  }
  for (const auto& [j, l] : load) {
    if (l > inst.capacity) {
      out.push_back({"capacity", "bin " + std::to_string(j) + " holds " + to_fraction_string(l) + " > " +
                                     std::to_string(inst.capacity)});
    }
  }
  return out;
}

Rational fractional_objective(const FractionalPacking& fp, const PackingInstance& inst) {
  auto violations = check_fractional(fp, inst);
  if (!violations.empty()) {
    throw std::invalid_argument("infeasible fractional packing (" + violations.front().constraint +
                                "): " + violations.front().message);
  }
  Rational total = 0;
  for (const auto& [key, x] : fp.entries) {
    total += x * inst.items[key.first].weight * key.second;
  }
  return total;
}

FractionalPacking from_packing(const Packing& p) {
  FractionalPacking fp;
  for (std::size_t b = 0; b < p.bins.size(); ++b) {
    for (auto i : p.bins[b]) fp.entries[{i, static_cast<std::int64_t>(b + 1)}] = 1;
  }
  return fp;
}

}  // namespace dynaflow::relax

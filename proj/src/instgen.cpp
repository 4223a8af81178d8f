#include "dynaflow/instgen.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

namespace dynaflow::instgen {

std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;  // 0 means the full 2^64 range
  if (span == 0) return static_cast<std::int64_t>(rng());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return lo + static_cast<std::int64_t>(r % span);
}

PathInstance gen_random(std::uint64_t seed, const RandomParams& p) {
  if (p.nodes < 1) throw std::invalid_argument("nodes must be at least 1");
  if (p.facility < 0 || p.facility > p.nodes) throw std::invalid_argument("facility outside the path");
  if (p.capacity < 1 || p.max_size < 1 || p.max_weight < 1 || p.max_distance < 1)
    throw std::invalid_argument("capacity, sizes, weights and distances must be positive");
  if (p.max_size > p.capacity) throw std::invalid_argument("max size exceeds capacity");
  if (p.nodes == 1 && p.groups > 0 && !p.allow_at_facility)
    throw std::invalid_argument("a single-node path only has room for groups at the facility");

  std::mt19937_64 rng(seed);
  PathInstance inst;
  inst.nodes = p.nodes;
  inst.capacity = p.capacity;
  inst.facility = p.facility != 0 ? p.facility : static_cast<int>(uniform_int(rng, 1, p.nodes));
  for (int k = 1; k < p.nodes; ++k) inst.distances.push_back(uniform_int(rng, 1, p.max_distance));
  for (std::size_t g = 0; g < p.groups; ++g) {
    Group group;
    group.id = "G" + std::to_string(g + 1);
    do {
      group.origin = static_cast<int>(uniform_int(rng, 1, p.nodes));
    } while (!p.allow_at_facility && group.origin == inst.facility);
    group.size = uniform_int(rng, 1, p.max_size);
    group.weight = uniform_int(rng, 1, p.max_weight);
    inst.groups.push_back(std::move(group));
  }
  return inst;
}

PackingInstance gen_random_packing(std::uint64_t seed, const PackingParams& p) {
  if (p.max_capacity < 1 || p.max_weight < 1 || p.max_ready < 1 || p.capacity < 0)
    throw std::invalid_argument("packing parameters must be positive");
  std::mt19937_64 rng(seed);
  PackingInstance inst;
  inst.capacity = p.capacity != 0 ? p.capacity : uniform_int(rng, 1, p.max_capacity);
  for (std::size_t i = 0; i < p.items; ++i) {
    PackingItem item;
    item.id = "I" + std::to_string(i + 1);
    item.size = uniform_int(rng, 1, inst.capacity);
    item.weight = uniform_int(rng, 1, p.max_weight);
    item.ready = uniform_int(rng, 1, p.max_ready);
    inst.items.push_back(std::move(item));
  }
  return inst;
}

PathInstance gen_from_partition(const std::vector<std::int64_t>& items) {
  std::int64_t total = 0;
  for (auto s : items) {
    if (s < 1) throw std::invalid_argument("partition items must be positive");
    total += s;
  }
  if (items.empty()) throw std::invalid_argument("partition needs at least one item");
  if (total % 2 != 0) throw std::invalid_argument("partition items have odd total " + std::to_string(total));
  const auto half = total / 2;
  for (auto s : items) {
    if (s > half) throw std::invalid_argument("item " + std::to_string(s) + " exceeds half the total");
  }

  PathInstance inst;
  inst.nodes = 2;
  inst.facility = 2;
  inst.capacity = half;
  inst.distances = {1};
  for (std::size_t i = 0; i < items.size(); ++i) {
    inst.groups.push_back({"S" + std::to_string(i + 1), items[i], items[i], 1});
  }
  return inst;
}

bool has_partition(const std::vector<std::int64_t>& items) {
  const auto total = std::accumulate(items.begin(), items.end(), std::int64_t{0});
  if (total % 2 != 0) return false;
  const std::size_t m = items.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (std::uint64_t{1} << i)) sum += items[i];
    if (2 * sum == total) return true;
  }
  return false;
}

namespace {

Move depart(int time, int node, std::vector<std::size_t> groups) {
  return {time, node, node + 1, std::move(groups)};
}

// Four people at node 1 and six at node 2 heading for node 3 over edges of
// capacity 3 and 4. Both distances are 1: with departures starting at time 1
// that is what the narrated arrival times (2, 3 and 4) require.
Fixture fig1a() {
  Fixture f;
  f.name = "fig1a";
  f.description = "10 unit persons, per-edge capacities 3 and 4, facility at node 3";
  auto& inst = f.instance;
  inst.nodes = 3;
  inst.facility = 3;
  inst.capacity = 4;
  inst.distances = {1, 1};
  inst.edge_capacities = {3, 4};
  for (int k = 1; k <= 4; ++k) inst.groups.push_back({"a" + std::to_string(k), 1, 1, 1});
  for (int k = 1; k <= 6; ++k) inst.groups.push_back({"b" + std::to_string(k), 1, 1, 2});
  // a1..a4 -> indices 0..3, b1..b6 -> 4..9
  f.schedule.moves = {
      depart(1, 1, {0, 1, 2}),
      depart(1, 2, {4, 5, 6, 7}),
      depart(2, 1, {3}),
      depart(2, 2, {0, 1, 8, 9}),
      depart(3, 2, {2, 3}),
  };
  f.objective = 28;
  return f;
}

// Groups G11 (2 persons, weight 5) and G12 (2, 3) at node 1, G21 (3, 5) and
// G22 (3, 3) at node 2, facility at node 3. Capacity 3 and unit distances are
// inferred from the narrated moves.
Fixture fig1b() {
  Fixture f;
  f.name = "fig1b";
  f.description = "4 weighted groups, capacity 3, facility at node 3";
  auto& inst = f.instance;
  inst.nodes = 3;
  inst.facility = 3;
  inst.capacity = 3;
  inst.distances = {1, 1};
  inst.groups = {
      {"G11", 2, 5, 1},
      {"G12", 2, 3, 1},
      {"G21", 3, 5, 2},
      {"G22", 3, 3, 2},
  };
  f.schedule.moves = {
      depart(1, 1, {0}),
      depart(1, 2, {2}),
      depart(2, 1, {1}),
      depart(2, 2, {0}),
      depart(3, 2, {1}),
      depart(4, 2, {3}),
  };
  f.objective = 52;
  return f;
}

}  // namespace

std::vector<Fixture> worked_examples() { return {fig1a(), fig1b()}; }

Fixture fixture(const std::string& name) {
  for (auto& f : worked_examples()) {
    if (f.name == name) return f;
  }
  throw std::invalid_argument("unknown fixture '" + name + "' (known: fig1a, fig1b)");
}

}  // namespace dynaflow::instgen

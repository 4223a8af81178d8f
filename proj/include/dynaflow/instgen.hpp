#pragma once

// Instance generators. Randomness comes from std::mt19937_64 (an algorithm
// fixed by the C++ standard) seeded with the 64-bit seed; bounded integers
// are drawn by rejection sampling (see uniform_int) so every platform
// produces identical instances for a given seed.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dynaflow/model.hpp"

namespace dynaflow::instgen {

/// Uniform integer in [lo, hi] from raw engine output: draws r until
/// r < limit, where limit is the largest multiple of (hi - lo + 1) not above
/// 2^64, and returns lo + r mod (hi - lo + 1).
std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);

struct RandomParams {
  int nodes = 4;
  int facility = 0;  // 0: drawn uniformly from 1..nodes
  std::int64_t capacity = 10;
  std::int64_t max_size = 10;
  std::int64_t max_weight = 10;
  std::int64_t max_distance = 3;
  std::size_t groups = 5;
  bool allow_at_facility = false;
};

/// Throws std::invalid_argument for inconsistent parameters.
PathInstance gen_random(std::uint64_t seed, const RandomParams& params);

struct PackingParams {
  std::size_t items = 6;
  std::int64_t capacity = 10;  // 0: drawn from 1..max_capacity
  std::int64_t max_capacity = 20;
  std::int64_t max_weight = 10;
  std::int64_t max_ready = 4;
};

PackingInstance gen_random_packing(std::uint64_t seed, const PackingParams& params);

/// Two-node instance encoding a partition question: one group per item at
/// node 1 with size = weight = item, facility at node 2, distance 1 and
/// capacity half the total. Throws std::invalid_argument for an odd total,
/// non-positive items or an item larger than half the total.
PathInstance gen_from_partition(const std::vector<std::int64_t>& items);

/// Whether some subset sums to exactly half the total (brute force).
bool has_partition(const std::vector<std::int64_t>& items);

struct Fixture {
  std::string name;
  std::string description;
  PathInstance instance;
  Schedule schedule;
  std::int64_t objective = 0;
};

/// "fig1a" and "fig1b".
std::vector<Fixture> worked_examples();
/// Throws std::invalid_argument for unknown names.
Fixture fixture(const std::string& name);

}  // namespace dynaflow::instgen

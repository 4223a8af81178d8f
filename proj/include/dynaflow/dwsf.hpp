#pragma once

// Evacuation of weighted groups on a path toward a single facility.
//
// Time convention: S_i^(0) is the initial placement and departures happen at
// integer times t >= 1. A group leaving node v at time t over an edge of
// length d is at the next node at t + d and may leave it again at that same
// time. Edge capacity bounds the total size departing onto an edge per time
// step; earlier cohorts still in transit do not count.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dynaflow/bpwrt.hpp"
#include "dynaflow/model.hpp"

namespace dynaflow::dwsf {

enum class Side { left, right };

/// Mapping between one side of the facility and its packing instance.
struct SideReduction {
  Side side = Side::left;
  std::vector<std::size_t> groups;  // packing item k -> group index
  std::vector<std::int64_t> prefix;  // travel time from the origin to a-1 (a+1)
  std::int64_t last_hop = 0;         // length of {a-1,a} or {a,a+1}
  std::int64_t weight_offset = 0;    // last_hop * total weight of the side
};

struct ReducedSide {
  PackingInstance packing;
  SideReduction reduction;
};

/// One item per group strictly on `side`, with ready time prefix + 1.
ReducedSide reduce_side(const PathInstance& inst, Side side);

/// Turns per-side packings (bins indexed by departure time across the last
/// edge) into departures along the whole path. Throws std::logic_error when a
/// bin is too early for a group to reach the last edge.
Schedule assemble_schedule(const PathInstance& inst, const Packing& left, const Packing& right);

enum class ViolationKind { invalid_move, presence, direction, capacity, incomplete };

struct ScheduleViolation {
  ViolationKind kind;
  int time = 0;
  int node = 0;
  std::string group;
  std::string message;
};

struct SimulationTrace {
  int end_time = 0;
  // Indexed [t][node - 1], t = 0..end_time; each list sorted by group index.
  std::vector<std::vector<std::vector<std::size_t>>> occupancy;
  std::vector<std::vector<std::vector<std::size_t>>> from_left;
  std::vector<std::vector<std::vector<std::size_t>>> from_right;
  std::vector<std::vector<std::vector<std::size_t>>> departures;
  std::vector<std::optional<std::int64_t>> arrival_time;
  // Moves that could not be carried out (bad node/target, group absent).
  std::vector<ScheduleViolation> issues;

  /// Per-time table of node occupancy.
  std::string dump(const PathInstance& inst) const;
};

SimulationTrace simulate(const PathInstance& inst, const Schedule& sched);

class IncompleteSchedule : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sum of w(G) * alpha(G); throws IncompleteSchedule naming a group that
/// never reaches the facility.
std::int64_t schedule_objective(const SimulationTrace& trace, const PathInstance& inst);

std::vector<ScheduleViolation> validate_schedule(const PathInstance& inst, const Schedule& sched);

struct Solution {
  Schedule schedule;
  std::int64_t objective = 0;
  ReducedSide left;
  ReducedSide right;
  bpwrt::GreedyResult left_greedy;
  bpwrt::GreedyResult right_greedy;
  std::int64_t left_packing_objective = 0;
  std::int64_t right_packing_objective = 0;
};

/// Greedy packing per side, assembled into a schedule. Throws
/// InvalidInstance or UnsupportedInstance (non-uniform capacity).
Solution solve(const PathInstance& inst);

std::string to_string(ViolationKind kind);

}  // namespace dynaflow::dwsf

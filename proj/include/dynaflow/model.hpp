#pragma once

// Domain types shared by the packing solvers, the path-network solver and
// the oracles. Node indices are 1-based throughout; groups and packing items
// are referenced internally by their position in the owning instance.

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dynaflow/rational.hpp"

namespace dynaflow {

/// An indivisible set of evacuees that must travel together.
struct Group {
  std::string id;
  std::int64_t size = 1;
  std::int64_t weight = 1;
  int origin = 1;

  friend bool operator==(const Group&, const Group&) = default;
};

/// A path network 1..n with a single facility and uniform edge capacity.
///
/// `distances[k-1]` is the travel time of edge {k, k+1}. `edge_capacities`
/// is either empty (every edge has `capacity`) or holds one override per
/// edge; overrides are only honoured by schedule validation, the solver
/// rejects them.
struct PathInstance {
  int nodes = 1;
  int facility = 1;
  std::int64_t capacity = 1;
  std::vector<std::int64_t> distances;
  std::vector<std::int64_t> edge_capacities;
  std::vector<Group> groups;

  bool uniform_capacity() const;
  /// Capacity of edge {k, k+1}.
  std::int64_t edge_capacity(int k) const;
  /// Travel time between two nodes (sum of the edge distances in between).
  std::int64_t path_distance(int from, int to) const;
  std::int64_t total_weight() const;

  friend bool operator==(const PathInstance&, const PathInstance&) = default;
};

struct PackingItem {
  std::string id;
  std::int64_t size = 1;
  std::int64_t weight = 1;
  std::int64_t ready = 1;

  friend bool operator==(const PackingItem&, const PackingItem&) = default;
};

struct PackingInstance {
  std::vector<PackingItem> items;
  std::int64_t capacity = 1;

  std::int64_t max_ready() const;
  std::int64_t total_size() const;

  friend bool operator==(const PackingInstance&, const PackingInstance&) = default;
};

/// Bins B_1..B_T as lists of item indices; `bins[0]` is B_1. Empty bins may
/// appear anywhere before the last nonempty one.
struct Packing {
  std::vector<std::vector<std::size_t>> bins;

  /// 1-based bin index per item, 0 for items not placed. Items placed twice
  /// report their first bin.
  std::vector<std::int64_t> assignment(std::size_t item_count) const;
  /// Drops trailing empty bins.
  void trim();

  friend bool operator==(const Packing&, const Packing&) = default;
};

/// One departure batch: the groups leaving `node` at `time` toward `to`.
struct Move {
  int time = 1;
  int node = 1;
  int to = 0;  // 0 until normalized: toward the facility
  std::vector<std::size_t> groups;

  friend bool operator==(const Move&, const Move&) = default;
};

/// Departure sets D_i^(t), kept as a list of moves sorted by (time, node).
struct Schedule {
  std::vector<Move> moves;

  int horizon() const;
  /// Fills implied targets, merges moves sharing (time, node, to) and sorts.
  void normalize(const PathInstance& inst);

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

/// x_ij keyed by (item index, 1-based bin index); absent entries are zero.
struct FractionalPacking {
  std::map<std::pair<std::size_t, std::int64_t>, Rational> entries;
};

// -- instance validation ----------------------------------------------------

enum class InstanceIssueKind {
  node_count,
  facility_range,
  capacity,
  distance_count,
  distance,
  edge_capacity,
  duplicate_id,
  empty_id,
  group_size,
  group_weight,
  group_origin,
  exceeds_capacity,
};

struct InstanceIssue {
  InstanceIssueKind kind;
  std::string message;
};

std::vector<InstanceIssue> check_instance(const PathInstance& inst);

class InvalidInstance : public std::runtime_error {
 public:
  explicit InvalidInstance(std::vector<InstanceIssue> issues);
  const std::vector<InstanceIssue>& issues() const { return issues_; }

 private:
  std::vector<InstanceIssue> issues_;
};

/// Returns the instance unchanged when every invariant holds; otherwise
/// throws InvalidInstance naming every violation.
PathInstance validate_instance(PathInstance raw);

/// Raised by solvers for inputs outside their model (non-uniform capacity).
class UnsupportedInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by exact oracles when an input exceeds their search budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dynaflow

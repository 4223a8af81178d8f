#pragma once

// Minsum bin packing with weighted items and ready times: the next-fit
// greedy with odd-aligned eligibility, its validator and objective, and the
// pairing of bins (2j-1, 2j) used by the ratio analysis.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dynaflow/model.hpp"

namespace dynaflow::bpwrt {

/// First bin in which the greedy considers an item with ready time `ready`:
/// the ready time itself when odd, one bin later when even.
std::int64_t eligibility_threshold(std::int64_t ready);

enum class StepAction {
  place,      // chosen item goes into the open bin
  close_bin,  // chosen item does not fit; the bin closes
  jump,       // nothing eligible; skip ahead to the next threshold
};

struct GreedyStep {
  std::int64_t bin = 1;
  std::size_t candidates = 0;
  std::optional<std::size_t> chosen;
  StepAction action = StepAction::place;
  std::int64_t next_bin = 1;

  friend bool operator==(const GreedyStep&, const GreedyStep&) = default;
};

struct GreedyTrace {
  std::vector<GreedyStep> steps;

  /// One decision per line.
  std::string dump(const PackingInstance& inst) const;
  /// Rebuilds the packing from the recorded placements.
  Packing replay() const;

  friend bool operator==(const GreedyTrace&, const GreedyTrace&) = default;
};

struct GreedyResult {
  Packing packing;
  GreedyTrace trace;
};

/// Runs the greedy. Ties on w/S go to the earlier item. Throws
/// std::invalid_argument for items with size > C, size < 1 or ready < 1.
GreedyResult solve_greedy(const PackingInstance& inst);

/// Sum of w(G) * t(G). Throws std::invalid_argument if an item is unplaced.
std::int64_t packing_objective(const Packing& p, const PackingInstance& inst);

enum class PackingViolationKind { unknown_item, missing, duplicate, capacity, ready_time };

struct PackingViolation {
  PackingViolationKind kind;
  std::int64_t bin = 0;  // 1-based, 0 when not tied to a bin
  std::string item;
  std::string message;
};

std::vector<PackingViolation> validate_packing(const Packing& p, const PackingInstance& inst);

struct BinPair {
  std::int64_t index = 1;  // pair j covers bins 2j-1 and 2j
  std::vector<std::size_t> items;
  std::int64_t size = 0;
  std::int64_t weight = 0;
  bool second_nonempty = false;
};

struct PairedView {
  std::vector<BinPair> pairs;
  std::int64_t objective = 0;  // sum over pairs of j * weight
};

PairedView paired_view(const Packing& p, const PackingInstance& inst);

/// Pairs with a nonempty second bin whose combined size does not exceed C.
/// The greedy never produces one.
std::vector<std::int64_t> pair_overflow_failures(const PairedView& view, std::int64_t capacity);

}  // namespace dynaflow::bpwrt

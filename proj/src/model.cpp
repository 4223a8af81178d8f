#include "dynaflow/model.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>
#include <unordered_set>

namespace dynaflow {

bool PathInstance::uniform_capacity() const {
  return std::all_of(edge_capacities.begin(), edge_capacities.end(),
                     [&](std::int64_t c) { return c == capacity; });
}

std::int64_t PathInstance::edge_capacity(int k) const {
  if (edge_capacities.empty()) return capacity;
  return edge_capacities.at(static_cast<std::size_t>(k - 1));
}

std::int64_t PathInstance::path_distance(int from, int to) const {
  if (from > to) std::swap(from, to);
  std::int64_t total = 0;
  for (int k = from; k < to; ++k) total += distances.at(static_cast<std::size_t>(k - 1));
  return total;
}

std::int64_t PathInstance::total_weight() const {
  std::int64_t total = 0;
  for (const auto& g : groups) total += g.weight;
  return total;
}

std::int64_t PackingInstance::max_ready() const {
  std::int64_t best = 0;
  for (const auto& it : items) best = std::max(best, it.ready);
  return best;
}

std::int64_t PackingInstance::total_size() const {
  std::int64_t total = 0;
  for (const auto& it : items) total += it.size;
  return total;
}

std::vector<std::int64_t> Packing::assignment(std::size_t item_count) const {
  std::vector<std::int64_t> bin_of(item_count, 0);
  for (std::size_t b = 0; b < bins.size(); ++b) {
    for (auto item : bins[b]) {
      if (item < item_count && bin_of[item] == 0) bin_of[item] = static_cast<std::int64_t>(b + 1);
    }
  }
  return bin_of;
}

void Packing::trim() {
  while (!bins.empty() && bins.back().empty()) bins.pop_back();
}

int Schedule::horizon() const {
  int h = 0;
  for (const auto& m : moves) h = std::max(h, m.time);
  return h;
}

void Schedule::normalize(const PathInstance& inst) {
  for (auto& m : moves) {
    if (m.to == 0) m.to = m.node < inst.facility ? m.node + 1 : m.node - 1;
  }
  std::stable_sort(moves.begin(), moves.end(), [](const Move& x, const Move& y) {
    return std::tie(x.time, x.node, x.to) < std::tie(y.time, y.node, y.to);
  });
  std::vector<Move> merged;
  for (auto& m : moves) {
    if (!merged.empty() && merged.back().time == m.time && merged.back().node == m.node &&
        merged.back().to == m.to) {
      auto& dst = merged.back().groups;
      dst.insert(dst.end(), m.groups.begin(), m.groups.end());
    } else {
      merged.push_back(std::move(m));
    }
  }
  for (auto& m : merged) std::sort(m.groups.begin(), m.groups.end());
  std::erase_if(merged, [](const Move& m) { return m.groups.empty(); });
  moves = std::move(merged);
}

namespace {

std::string join_issues(const std::vector<InstanceIssue>& issues) {
  std::string text = "invalid instance:";
  for (const auto& issue : issues) text += "\n  " + issue.message;
  return text;
}

}  // namespace

InvalidInstance::InvalidInstance(std::vector<InstanceIssue> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

std::vector<InstanceIssue> check_instance(const PathInstance& inst) {
  std::vector<InstanceIssue> out;
  auto report = [&](InstanceIssueKind kind, std::string msg) { out.push_back({kind, std::move(msg)}); };

  if (inst.nodes < 1) report(InstanceIssueKind::node_count, "node count must be at least 1");
  if (inst.facility < 1 || inst.facility > inst.nodes)
    report(InstanceIssueKind::facility_range,
           "facility " + std::to_string(inst.facility) + " outside 1.." + std::to_string(inst.nodes));
  if (inst.capacity < 1) report(InstanceIssueKind::capacity, "capacity must be positive");

  const bool distances_ok =
      inst.nodes >= 1 && inst.distances.size() == static_cast<std::size_t>(inst.nodes - 1);
  if (!distances_ok)
    report(InstanceIssueKind::distance_count,
           "expected " + std::to_string(std::max(inst.nodes - 1, 0)) + " edge distances, got " +
               std::to_string(inst.distances.size()));
  for (std::size_t k = 0; k < inst.distances.size(); ++k) {
    if (inst.distances[k] < 1)
      report(InstanceIssueKind::distance,
             "edge {" + std::to_string(k + 1) + "," + std::to_string(k + 2) + "} has non-positive distance");
  }
  if (!inst.edge_capacities.empty()) {
    if (inst.edge_capacities.size() != inst.distances.size())
      report(InstanceIssueKind::edge_capacity, "edge capacity overrides must cover every edge");
    for (std::size_t k = 0; k < inst.edge_capacities.size(); ++k) {
      if (inst.edge_capacities[k] < 1)
        report(InstanceIssueKind::edge_capacity,
               "edge {" + std::to_string(k + 1) + "," + std::to_string(k + 2) + "} has non-positive capacity");
    }
  }
  const bool overrides_ok = inst.edge_capacities.empty() ||
                            (inst.edge_capacities.size() == inst.distances.size() &&
                             std::all_of(inst.edge_capacities.begin(), inst.edge_capacities.end(),
                                         [](std::int64_t c) { return c >= 1; }));

  std::unordered_set<std::string> seen;
  for (const auto& g : inst.groups) {
    const std::string who = "group '" + g.id + "'";
    if (g.id.empty()) report(InstanceIssueKind::empty_id, "group with empty id");
    if (!seen.insert(g.id).second) report(InstanceIssueKind::duplicate_id, "duplicate id '" + g.id + "'");
    if (g.size < 1) report(InstanceIssueKind::group_size, who + " has non-positive size");
    if (g.weight < 1) report(InstanceIssueKind::group_weight, who + " has non-positive weight");
    const bool origin_ok = g.origin >= 1 && g.origin <= inst.nodes;
    if (!origin_ok) report(InstanceIssueKind::group_origin, who + " has origin outside the path");
    if (g.size > inst.capacity) {
      report(InstanceIssueKind::exceeds_capacity, who + ": group exceeds capacity");
    } else if (origin_ok && distances_ok && overrides_ok && !inst.edge_capacities.empty() &&
               inst.facility >= 1 && inst.facility <= inst.nodes) {
      const int lo = std::min(g.origin, inst.facility);
      const int hi = std::max(g.origin, inst.facility);
      for (int k = lo; k < hi; ++k) {
        if (g.size > inst.edge_capacity(k)) {
          report(InstanceIssueKind::exceeds_capacity, who + ": group exceeds capacity of edge {" +
                                                          std::to_string(k) + "," + std::to_string(k + 1) + "}");
          break;
        }
      }
    }
  }
  return out;
}

PathInstance validate_instance(PathInstance raw) {
  auto issues = check_instance(raw);
  if (!issues.empty()) throw InvalidInstance(std::move(issues));
  return raw;
}

}  // namespace dynaflow

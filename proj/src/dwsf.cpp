#include "dynaflow/dwsf.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace dynaflow::dwsf {

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::invalid_move: return "invalid move";
    case ViolationKind::presence: return "presence";
    case ViolationKind::direction: return "direction";
    case ViolationKind::capacity: return "capacity";
    case ViolationKind::incomplete: return "incomplete";
  }
  return "unknown";
}

ReducedSide reduce_side(const PathInstance& inst, Side side) {
  const int a = inst.facility;
  ReducedSide out;
  out.packing.capacity = inst.capacity;
  out.reduction.side = side;
  if (side == Side::left && a > 1) {
    out.reduction.last_hop = inst.distances.at(static_cast<std::size_t>(a - 2));
  } else if (side == Side::right && a < inst.nodes) {
    out.reduction.last_hop = inst.distances.at(static_cast<std::size_t>(a - 1));
  }

  std::int64_t weight = 0;
  for (std::size_t g = 0; g < inst.groups.size(); ++g) {
    const auto& group = inst.groups[g];
    const bool on_side = side == Side::left ? group.origin < a : group.origin > a;
    if (!on_side) continue;
    const int gate = side == Side::left ? a - 1 : a + 1;
    const auto prefix = inst.path_distance(group.origin, gate);
    out.packing.items.push_back({group.id, group.size, group.weight, prefix + 1});
    out.reduction.groups.push_back(g);
    out.reduction.prefix.push_back(prefix);
    weight += group.weight;
  }
  out.reduction.weight_offset = out.reduction.last_hop * weight;
  return out;
}

namespace {

void assemble_side(const PathInstance& inst, const Packing& packing, Side side,
                   std::map<std::tuple<int, int, int>, std::vector<std::size_t>>& moves) {
  const auto reduced = reduce_side(inst, side);
  const auto& red = reduced.reduction;
  const int a = inst.facility;
  const int gate = side == Side::left ? a - 1 : a + 1;
  const int step = side == Side::left ? 1 : -1;
  for (std::size_t b = 0; b < packing.bins.size(); ++b) {
    const auto bin = static_cast<std::int64_t>(b + 1);
    for (auto item : packing.bins[b]) {
      if (item >= red.groups.size()) throw std::logic_error("packing references an item outside the side");
      const auto g = red.groups[item];
      if (bin - red.prefix[item] < 1) {
        throw std::logic_error("group '" + inst.groups[g].id + "' in bin " + std::to_string(bin) +
                               " would have to depart before time 1");
      }
      for (int v = inst.groups[g].origin; v != a; v += step) {
        const auto t = bin - inst.path_distance(v, gate);
        moves[{static_cast<int>(t), v, v + step}].push_back(g);
      }
    }
  }
}

}  // namespace

Schedule assemble_schedule(const PathInstance& inst, const Packing& left, const Packing& right) {
  std::map<std::tuple<int, int, int>, std::vector<std::size_t>> moves;
  assemble_side(inst, left, Side::left, moves);
  assemble_side(inst, right, Side::right, moves);
  Schedule s;
  for (auto& [key, groups] : moves) {
    std::sort(groups.begin(), groups.end());
    s.moves.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), std::move(groups)});
  }
  return s;
}

namespace {

struct GroupState {
  int node = 1;
  int prev = 0;           // node the group came from, 0 before its first move
  std::int64_t ready = 0;  // time at which it is (or will be) at `node`
};

using Table = std::vector<std::vector<std::vector<std::size_t>>>;

void grow(Table& table, std::size_t times, std::size_t nodes) {
  while (table.size() < times) table.emplace_back(nodes);
}

}  // namespace

SimulationTrace simulate(const PathInstance& inst, const Schedule& input) {
  Schedule sched = input;
  sched.normalize(inst);

  const int n = inst.nodes;
  const int a = inst.facility;
  const std::size_t nn = static_cast<std::size_t>(n);
  const std::size_t m = inst.groups.size();

  SimulationTrace trace;
  trace.arrival_time.assign(m, std::nullopt);
  std::vector<GroupState> state(m);
  for (std::size_t g = 0; g < m; ++g) {
    state[g].node = inst.groups[g].origin;
    if (state[g].node == a) trace.arrival_time[g] = 0;
  }

  auto snapshot = [&](std::int64_t t) {
    grow(trace.occupancy, static_cast<std::size_t>(t + 1), nn);
    auto& row = trace.occupancy[static_cast<std::size_t>(t)];
    for (std::size_t g = 0; g < m; ++g) {
      if (state[g].ready <= t && state[g].node >= 1 && state[g].node <= n)
        row[static_cast<std::size_t>(state[g].node - 1)].push_back(g);
    }
  };
  snapshot(0);

  const int last_move = sched.horizon();
  std::size_t next_move = 0;
  for (; next_move < sched.moves.size() && sched.moves[next_move].time < 1; ++next_move) {
    const auto& mv = sched.moves[next_move];
    trace.issues.push_back({ViolationKind::invalid_move, mv.time, mv.node, "",
                            "t=" + std::to_string(mv.time) + " node " + std::to_string(mv.node) +
                                ": departures start at time 1"});
  }
  for (std::int64_t t = 1;; ++t) {
    bool in_transit = false;
    for (const auto& s : state) in_transit = in_transit || s.ready >= t;
    if (t > last_move && !in_transit) {
      trace.end_time = static_cast<int>(t - 1);
      break;
    }
    const auto ut = static_cast<std::size_t>(t);
    grow(trace.from_left, ut + 1, nn);
    grow(trace.from_right, ut + 1, nn);
    grow(trace.departures, ut + 1, nn);

    for (std::size_t g = 0; g < m; ++g) {
      const auto& s = state[g];
      if (s.ready != t || s.prev == 0) continue;
      auto& table = s.prev < s.node ? trace.from_left : trace.from_right;
      table[ut][static_cast<std::size_t>(s.node - 1)].push_back(g);
      if (s.node == a && !trace.arrival_time[g]) trace.arrival_time[g] = t;
    }

    std::vector<bool> moved(m, false);
    for (; next_move < sched.moves.size() && sched.moves[next_move].time <= t; ++next_move) {
      const auto& mv = sched.moves[next_move];
      auto issue = [&](ViolationKind kind, const std::string& group, const std::string& msg) {
        trace.issues.push_back({kind, mv.time, mv.node, group, msg});
      };
      const std::string where = "t=" + std::to_string(mv.time) + " node " + std::to_string(mv.node);
      if (mv.node < 1 || mv.node > n || mv.to < 1 || mv.to > n || std::abs(mv.to - mv.node) != 1) {
        issue(ViolationKind::invalid_move, "",
              where + ": no edge to node " + std::to_string(mv.to));
        continue;
      }
      const auto d = inst.distances[static_cast<std::size_t>(std::min(mv.node, mv.to) - 1)];
      for (auto g : mv.groups) {
        if (g >= m) {
          issue(ViolationKind::invalid_move, std::to_string(g), where + ": unknown group");
          continue;
        }
        auto& s = state[g];
        if (moved[g] || s.node != mv.node || s.ready > t) {
          issue(ViolationKind::presence, inst.groups[g].id,
                where + ": group '" + inst.groups[g].id + "' is not at the node");
          continue;
        }
        moved[g] = true;
        trace.departures[ut][static_cast<std::size_t>(mv.node - 1)].push_back(g);
        s.prev = mv.node;
        s.node = mv.to;
        s.ready = t + d;
      }
    }
    snapshot(t);
  }

  for (auto* table : {&trace.from_left, &trace.from_right, &trace.departures}) {
    grow(*table, static_cast<std::size_t>(trace.end_time + 1), nn);
    for (auto& row : *table)
      for (auto& cell : row) std::sort(cell.begin(), cell.end());
  }
  return trace;
}

std::int64_t schedule_objective(const SimulationTrace& trace, const PathInstance& inst) {
  std::int64_t total = 0;
  for (std::size_t g = 0; g < inst.groups.size(); ++g) {
    if (!trace.arrival_time.at(g)) throw IncompleteSchedule("group '" + inst.groups[g].id + "' never arrives");
    total += inst.groups[g].weight * *trace.arrival_time[g];
  }
  return total;
}

std::vector<ScheduleViolation> validate_schedule(const PathInstance& inst, const Schedule& input) {
  Schedule sched = input;
  sched.normalize(inst);
  const auto trace = simulate(inst, sched);
  std::vector<ScheduleViolation> out = trace.issues;

  const int a = inst.facility;
  const std::size_t m = inst.groups.size();
  for (const auto& mv : sched.moves) {
    if (mv.node < 1 || mv.node > inst.nodes || mv.to < 1 || mv.to > inst.nodes || std::abs(mv.to - mv.node) != 1)
      continue;
    const std::string where = "t=" + std::to_string(mv.time) + " node " + std::to_string(mv.node);
    const bool toward = mv.node < a ? mv.to == mv.node + 1 : mv.node > a && mv.to == mv.node - 1;
    if (!toward) {
      for (auto g : mv.groups) {
        if (g >= m) continue;
        out.push_back({ViolationKind::direction, mv.time, mv.node, inst.groups[g].id,
                       where + ": group '" + inst.groups[g].id + "' moves away from the facility"});
      }
    }
    std::int64_t load = 0;
    for (auto g : mv.groups) {
      if (g < m) load += inst.groups[g].size;
    }
    const auto cap = inst.edge_capacity(std::min(mv.node, mv.to));
    if (load > cap) {
      out.push_back({ViolationKind::capacity, mv.time, mv.node, "",
                     where + ": capacity: departing size " + std::to_string(load) + " > " + std::to_string(cap)});
    }
  }
  for (std::size_t g = 0; g < m; ++g) {
    if (!trace.arrival_time[g]) {
      out.push_back({ViolationKind::incomplete, 0, 0, inst.groups[g].id,
                     "group '" + inst.groups[g].id + "' never arrives"});
    }
  }
  return out;
}

Solution solve(const PathInstance& raw) {
  auto inst = validate_instance(raw);
  if (!inst.uniform_capacity()) throw UnsupportedInstance("solver requires uniform edge capacity");

  Solution sol;
  sol.left = reduce_side(inst, Side::left);
  sol.right = reduce_side(inst, Side::right);
  sol.left_greedy = bpwrt::solve_greedy(sol.left.packing);
  sol.right_greedy = bpwrt::solve_greedy(sol.right.packing);
  sol.left_packing_objective = bpwrt::packing_objective(sol.left_greedy.packing, sol.left.packing);
  sol.right_packing_objective = bpwrt::packing_objective(sol.right_greedy.packing, sol.right.packing);
  sol.schedule = assemble_schedule(inst, sol.left_greedy.packing, sol.right_greedy.packing);
  sol.objective = schedule_objective(simulate(inst, sol.schedule), inst);
  return sol;
}

std::string SimulationTrace::dump(const PathInstance& inst) const {
  auto names = [&](const std::vector<std::size_t>& cell) {
    std::string s;
    for (auto g : cell) {
      if (!s.empty()) s += ',';
      s += inst.groups.at(g).id;
    }
    return s.empty() ? std::string("-") : s;
  };
  std::vector<std::size_t> width(static_cast<std::size_t>(inst.nodes), 4);
  for (const auto& row : occupancy)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], names(row[i]).size());

  std::ostringstream out;
  out << std::left << std::setw(5) << "t";
  for (int i = 1; i <= inst.nodes; ++i) {
    std::string head = "n" + std::to_string(i) + (i == inst.facility ? "*" : "");
    out << " | " << std::setw(static_cast<int>(width[static_cast<std::size_t>(i - 1)])) << head;
  }
  out << '\n';
  for (std::size_t t = 0; t < occupancy.size(); ++t) {
    out << std::setw(5) << t;
    for (std::size_t i = 0; i < occupancy[t].size(); ++i)
      out << " | " << std::setw(static_cast<int>(width[i])) << names(occupancy[t][i]);
    out << '\n';
  }
  return out.str();
}

}  // namespace dynaflow::dwsf

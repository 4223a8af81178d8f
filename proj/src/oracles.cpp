#include "dynaflow/oracles.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "dynaflow/dwsf.hpp"

namespace dynaflow::oracles {

std::int64_t horizon_bound(const PackingInstance& inst) {
  if (inst.items.empty()) return 0;
  return inst.max_ready() + static_cast<std::int64_t>(inst.items.size());
}

// -- packing: subset DP -------------------------------------------------------

PackingOptimum exact_packing_opt(const PackingInstance& inst, std::int64_t max_bin) {
  const std::size_t m = inst.items.size();
  if (m > kMaxPackingItems)
    throw BudgetExceeded("packing oracle limited to " + std::to_string(kMaxPackingItems) + " items, got " +
                         std::to_string(m));
  if (max_bin <= 0) max_bin = horizon_bound(inst);
  if (m == 0) return {};

  const std::uint32_t full = (1u << m) - 1;
  const std::size_t masks = std::size_t{1} << m;
  std::vector<std::int64_t> size(masks, 0), weight(masks, 0);
  for (std::uint32_t s = 1; s <= full; ++s) {
    const auto low = static_cast<std::size_t>(__builtin_ctz(s));
    size[s] = size[s & (s - 1)] + inst.items[low].size;
    weight[s] = weight[s & (s - 1)] + inst.items[low].weight;
  }

  constexpr auto inf = std::numeric_limits<std::int64_t>::max();
  const auto bins = static_cast<std::size_t>(max_bin);
  // best[j][done]: cheapest way to pack the items outside `done` into bins j+1..max_bin
  std::vector<std::vector<std::int64_t>> best(bins + 1, std::vector<std::int64_t>(masks, inf));
  best[bins][full] = 0;
  for (std::size_t j = bins; j-- > 0;) {
    const auto bin = static_cast<std::int64_t>(j + 1);
    std::uint32_t ready = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (inst.items[i].ready <= bin) ready |= 1u << i;
    for (std::uint32_t done = 0; done <= full; ++done) {
      const std::uint32_t open = ~done & full & ready;
      std::int64_t value = best[j + 1][done];
      for (std::uint32_t sub = open; sub != 0; sub = (sub - 1) & open) {
        if (size[sub] > inst.capacity) continue;
        const auto rest = best[j + 1][done | sub];
        if (rest == inf) continue;
        value = std::min(value, rest + bin * weight[sub]);
      }
      best[j][done] = value;
    }
  }
  if (best[0][0] == inf)
    throw std::invalid_argument("no packing fits within " + std::to_string(max_bin) + " bins");

  PackingOptimum out;
  out.value = best[0][0];
  std::uint32_t done = 0;
  for (std::size_t j = 0; j < bins && done != full; ++j) {
    const auto bin = static_cast<std::int64_t>(j + 1);
    std::uint32_t ready = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (inst.items[i].ready <= bin) ready |= 1u << i;
    const std::uint32_t open = ~done & full & ready;
    std::uint32_t chosen = 0;
    // prefer the largest subset reaching the optimum so the witness is stable
    for (std::uint32_t sub = open;; sub = (sub - 1) & open) {
      if (size[sub] <= inst.capacity && best[j + 1][done | sub] != inf &&
          best[j + 1][done | sub] + bin * weight[sub] == best[j][done]) {
        chosen = sub;
        break;
      }
      if (sub == 0) break;
    }
    auto& out_bin = out.packing.bins.emplace_back();
    for (std::size_t i = 0; i < m; ++i)
      if (chosen & (1u << i)) out_bin.push_back(i);
    done |= chosen;
  }
  out.packing.trim();
  return out;
}

// -- path network: exhaustive search ----------------------------------------

int default_horizon(const PathInstance& inst) {
  std::int64_t h = 0;
  for (auto side : {dwsf::Side::left, dwsf::Side::right}) {
    h = std::max(h, horizon_bound(dwsf::reduce_side(inst, side).packing));
  }
  return static_cast<int>(h);
}

namespace {

constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::max() / 4;

struct Position {
  int node = 0;
  std::int64_t wait = 0;  // time steps until the group is at `node`
};

class PathSearch {
 public:
  PathSearch(const PathInstance& inst, int horizon) : inst_(inst), horizon_(horizon) {
    for (std::size_t g = 0; g < inst.groups.size(); ++g) {
      if (inst.groups[g].origin != inst.facility) movers_.push_back(g);
    }
    to_facility_.resize(static_cast<std::size_t>(inst.nodes) + 1);
    for (int v = 1; v <= inst.nodes; ++v) to_facility_[v] = inst.path_distance(v, inst.facility);
  }

  DwsfOptimum run() {
    std::vector<Position> start;
    for (auto g : movers_) start.push_back({inst_.groups[g].origin, 0});
    DwsfOptimum out;
    out.value = solve(1, start);
    if (out.value >= kUnreachable)
      throw std::invalid_argument("no schedule completes within horizon " + std::to_string(horizon_));
    out.states = memo_.size();
    out.schedule = reconstruct(start);
    return out;
  }

 private:
  struct Entry {
    std::int64_t value = kUnreachable;
    std::vector<std::uint8_t> departing;  // mover indices sent at this state
  };

  bool arrived(const Position& p) const { return p.node == inst_.facility; }

  std::string key(int t, const std::vector<Position>& state) const {
    std::string k;
    k.reserve(2 + state.size() * 3);
    k.push_back(static_cast<char>(t & 0xff));
    k.push_back(static_cast<char>(t >> 8));
    for (const auto& p : state) {
      k.push_back(static_cast<char>(p.node));
      k.push_back(static_cast<char>(p.wait & 0xff));
      k.push_back(static_cast<char>(p.wait >> 8));
    }
    return k;
  }

  // Every unarrived group needs at least its remaining wait plus the travel
  // time to the facility.
  std::int64_t lower_bound(int t, const std::vector<Position>& state) const {
    std::int64_t lb = 0;
    for (std::size_t k = 0; k < state.size(); ++k) {
      if (arrived(state[k])) continue;
      const auto base = std::max<std::int64_t>(state[k].wait, 0);
      lb += inst_.groups[movers_[k]].weight * (t + base + to_facility_[state[k].node]);
    }
    return lb;
  }

  // Advances one time step after sending `departing`; returns the weighted
  // arrival time of groups that reach the facility by that move.
  std::int64_t advance(int t, const std::vector<Position>& state, const std::vector<std::uint8_t>& departing,
                       std::vector<Position>& next) const {
    next = state;
    std::int64_t cost = 0;
    std::vector<bool> sent(state.size(), false);
    for (auto k : departing) sent[k] = true;
    for (std::size_t k = 0; k < next.size(); ++k) {
      auto& p = next[k];
      if (arrived(p)) continue;
      if (sent[k]) {
        const int to = p.node < inst_.facility ? p.node + 1 : p.node - 1;
        const auto d = inst_.distances[static_cast<std::size_t>(std::min(p.node, to) - 1)];
        p.node = to;
        if (arrived(p)) {
          p.wait = 0;
          cost += inst_.groups[movers_[k]].weight * (t + d);
        } else {
          p.wait = d - 1;
        }
      } else if (p.wait > 0) {
        --p.wait;
      }
    }
    return cost;
  }

  std::int64_t solve(int t, const std::vector<Position>& state) {
    bool done = true;
    for (const auto& p : state) done = done && arrived(p);
    if (done) return 0;
    if (t > horizon_) return kUnreachable;

    const auto k = key(t, state);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second.value;

    // groups waiting at each node, available to depart now
    std::vector<std::vector<std::uint8_t>> present(static_cast<std::size_t>(inst_.nodes) + 1);
    for (std::size_t i = 0; i < state.size(); ++i) {
      if (!arrived(state[i]) && state[i].wait == 0) present[state[i].node].push_back(static_cast<std::uint8_t>(i));
    }
    std::vector<std::vector<std::vector<std::uint8_t>>> options;
    for (int v = 1; v <= inst_.nodes; ++v) {
      const auto& here = present[v];
      if (here.empty()) continue;
      const int to = v < inst_.facility ? v + 1 : v - 1;
      const auto cap = inst_.edge_capacity(std::min(v, to));
      auto& opts = options.emplace_back();
      const std::uint32_t all = (1u << here.size()) - 1;
      // larger batches first: they tend to reach good incumbents early
      for (std::uint32_t sub = all;; --sub) {
        std::int64_t load = 0;
        std::vector<std::uint8_t> batch;
        for (std::size_t b = 0; b < here.size(); ++b) {
          if (sub & (1u << b)) {
            load += inst_.groups[movers_[here[b]]].size;
            batch.push_back(here[b]);
          }
        }
        if (load <= cap) opts.push_back(std::move(batch));
        if (sub == 0) break;
      }
    }

    Entry entry;
    std::vector<std::uint8_t> departing;
    std::vector<Position> next;
    std::function<void(std::size_t)> choose = [&](std::size_t node_index) {
      if (node_index == options.size()) {
        const auto now = advance(t, state, departing, next);
        if (now + lower_bound(t + 1, next) >= entry.value) return;
        const auto rest = solve(t + 1, next);
        if (rest >= kUnreachable) return;
        if (now + rest < entry.value) {
          entry.value = now + rest;
          entry.departing = departing;
        }
        return;
      }
      for (const auto& batch : options[node_index]) {
        const auto mark = departing.size();
        departing.insert(departing.end(), batch.begin(), batch.end());
        choose(node_index + 1);
        departing.resize(mark);
      }
    };
    choose(0);

    const auto value = entry.value;
    memo_.emplace(k, std::move(entry));
    return value;
  }

  Schedule reconstruct(std::vector<Position> state) const {
    Schedule s;
    std::vector<Position> next;
    for (int t = 1; t <= horizon_; ++t) {
      bool done = true;
      for (const auto& p : state) done = done && arrived(p);
      if (done) break;
      const auto& entry = memo_.at(key(t, state));
      for (auto k : entry.departing) {
        Move mv;
        mv.time = t;
        mv.node = state[k].node;
        mv.to = mv.node < inst_.facility ? mv.node + 1 : mv.node - 1;
        mv.groups.push_back(movers_[k]);
        s.moves.push_back(std::move(mv));
      }
      advance(t, state, entry.departing, next);
      state = next;
    }
    s.normalize(inst_);
    return s;
  }

  const PathInstance& inst_;
  int horizon_;
  std::vector<std::size_t> movers_;
  std::vector<std::int64_t> to_facility_;
  std::unordered_map<std::string, Entry> memo_;
};

}  // namespace

DwsfOptimum exact_dwsf_opt(const PathInstance& raw, int horizon, const SearchBudget& budget) {
  const auto inst = validate_instance(raw);
  if (horizon <= 0) horizon = default_horizon(inst);
  std::size_t movers = 0;
  for (const auto& g : inst.groups) movers += g.origin != inst.facility ? 1 : 0;
  if (movers > budget.max_groups || inst.nodes > budget.max_nodes || horizon > budget.max_horizon ||
      movers > 20) {
    throw BudgetExceeded("exhaustive search budget exceeded: " + std::to_string(movers) + " groups, " +
                         std::to_string(inst.nodes) + " nodes, horizon " + std::to_string(horizon) +
                         " (limits " + std::to_string(budget.max_groups) + "/" +
                         std::to_string(budget.max_nodes) + "/" + std::to_string(budget.max_horizon) + ")");
  }
  if (movers == 0) return {};
  return PathSearch(inst, horizon).run();
}

// -- relaxation: min-cost flow ------------------------------------------------

namespace {

struct Arc {
  std::size_t to;
  std::int64_t cap;
  Rational cost;
  std::size_t rev;
};

class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t nodes) : adj_(nodes) {}

  std::size_t add_arc(std::size_t from, std::size_t to, std::int64_t cap, const Rational& cost) {
    adj_[from].push_back({to, cap, cost, adj_[to].size()});
    adj_[to].push_back({from, 0, -cost, adj_[from].size() - 1});
    return adj_[from].size() - 1;
  }

  const Arc& arc(std::size_t from, std::size_t index) const { return adj_[from][index]; }

  // Successive shortest augmenting paths (Bellman-Ford on the residual
  // graph). Returns the flow pushed; stops once no augmenting path remains.
  std::int64_t min_cost_flow(std::size_t source, std::size_t sink, std::int64_t demand) {
    std::int64_t flow = 0;
    const std::size_t n = adj_.size();
    while (flow < demand) {
      std::vector<std::optional<Rational>> dist(n);
      std::vector<std::pair<std::size_t, std::size_t>> parent(n, {n, 0});
      std::vector<bool> queued(n, false);
      std::deque<std::size_t> queue{source};
      dist[source] = Rational(0);
      queued[source] = true;
      while (!queue.empty()) {
        const auto u = queue.front();
        queue.pop_front();
        queued[u] = false;
        for (std::size_t e = 0; e < adj_[u].size(); ++e) {
          const auto& a = adj_[u][e];
          if (a.cap <= 0) continue;
          Rational cand = *dist[u] + a.cost;
          if (!dist[a.to] || cand < *dist[a.to]) {
            dist[a.to] = std::move(cand);
            parent[a.to] = {u, e};
            if (!queued[a.to]) {
              queued[a.to] = true;
              queue.push_back(a.to);
            }
          }
        }
      }
      if (!dist[sink]) break;
      std::int64_t push = demand - flow;
      for (auto v = sink; v != source; v = parent[v].first) {
        push = std::min(push, adj_[parent[v].first][parent[v].second].cap);
      }
      for (auto v = sink; v != source; v = parent[v].first) {
        auto& a = adj_[parent[v].first][parent[v].second];
        a.cap -= push;
        adj_[a.to][a.rev].cap += push;
      }
      flow += push;
    }
    return flow;
  }

 private:
  std::vector<std::vector<Arc>> adj_;
};

}  // namespace

FractionalOptimum exact_fractional_opt_mcf(const PackingInstance& inst, std::int64_t max_bin) {
  if (max_bin <= 0) max_bin = horizon_bound(inst);
  const std::size_t m = inst.items.size();
  if (m == 0) return {};
  const auto mass = inst.total_size();
  if (mass > kMaxFlowArcUnits / std::max<std::int64_t>(max_bin, 1))
    throw BudgetExceeded("min-cost-flow oracle budget exceeded: mass " + std::to_string(mass) + " x " +
                         std::to_string(max_bin) + " bins");

  const auto bins = static_cast<std::size_t>(max_bin);
  const std::size_t source = 0;
  const std::size_t sink = 1;
  auto item_node = [](std::size_t i) { return 2 + i; };
  auto bin_node = [m](std::size_t j) { return 2 + m + (j - 1); };
  FlowNetwork net(2 + m + bins);

  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> item_arcs(m);  // (bin, arc index)
  for (std::size_t i = 0; i < m; ++i) {
    const auto& it = inst.items[i];
    net.add_arc(source, item_node(i), it.size, 0);
    for (auto j = static_cast<std::size_t>(std::max<std::int64_t>(it.ready, 1)); j <= bins; ++j) {
      const Rational cost = Rational(static_cast<std::int64_t>(j) * it.weight) / it.size;
      item_arcs[i].push_back({j, net.add_arc(item_node(i), bin_node(j), it.size, cost)});
    }
  }
  for (std::size_t j = 1; j <= bins; ++j) net.add_arc(bin_node(j), sink, inst.capacity, 0);

  if (net.min_cost_flow(source, sink, mass) < mass)
    throw std::invalid_argument("relaxation infeasible within " + std::to_string(max_bin) + " bins");

  FractionalOptimum out;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& it = inst.items[i];
    for (const auto& [j, e] : item_arcs[i]) {
      const auto used = it.size - net.arc(item_node(i), e).cap;
      if (used == 0) continue;
      const Rational x = Rational(used) / it.size;
      out.packing.entries[{i, static_cast<std::int64_t>(j)}] = x;
      out.value += x * it.weight * static_cast<std::int64_t>(j);
    }
  }
  return out;
}

}  // namespace dynaflow::oracles

#include "dynaflow/io.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <unordered_map>

namespace dynaflow {

namespace {

const json& field(const json& j, const char* key, const char* where) {
  if (!j.is_object()) throw InputError(std::string(where) + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string(where) + ": missing field '" + key + "'");
  return *it;
}

std::int64_t int_field(const json& j, const char* key, const char* where) {
  const json& v = field(j, key, where);
  if (!v.is_number_integer()) throw InputError(std::string(where) + ": field '" + key + "' must be an integer");
  return v.get<std::int64_t>();
}

std::string string_field(const json& j, const char* key, const char* where) {
  const json& v = field(j, key, where);
  if (!v.is_string()) throw InputError(std::string(where) + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

const json& array_field(const json& j, const char* key, const char* where) {
  const json& v = field(j, key, where);
  if (!v.is_array()) throw InputError(std::string(where) + ": field '" + key + "' must be an array");
  return v;
}

int node_value(std::int64_t v, const char* what) {
  if (v < -1'000'000 || v > 1'000'000) throw InputError(std::string(what) + " out of range");
  return static_cast<int>(v);
}

template <typename Items>
std::unordered_map<std::string, std::size_t> index_by_id(const Items& items) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < items.size(); ++i) index.emplace(items[i].id, i);
  return index;
}

}  // namespace

PathInstance instance_from_json(const json& j) {
  PathInstance inst;
  inst.nodes = node_value(int_field(j, "nodes", "instance"), "nodes");
  inst.facility = node_value(int_field(j, "facility", "instance"), "facility");
  inst.capacity = int_field(j, "capacity", "instance");

  const json& edges = array_field(j, "edges", "instance");
  const std::size_t edge_count = inst.nodes >= 1 ? static_cast<std::size_t>(inst.nodes - 1) : 0;
  if (edges.size() != edge_count)
    throw InputError("instance: expected " + std::to_string(edge_count) + " edges, got " +
                     std::to_string(edges.size()));
  inst.distances.assign(edge_count, 0);
  std::vector<std::int64_t> overrides(edge_count, 0);
  std::vector<bool> seen(edge_count, false);
  std::size_t override_count = 0;
  for (const auto& e : edges) {
    const auto from = int_field(e, "from", "edge");
    const auto to = int_field(e, "to", "edge");
    const auto lo = std::min(from, to);
    if (std::max(from, to) != lo + 1 || lo < 1 || lo > static_cast<std::int64_t>(edge_count))
      throw InputError("edge {" + std::to_string(from) + "," + std::to_string(to) +
                       "} does not join consecutive nodes of the path");
    const auto k = static_cast<std::size_t>(lo - 1);
    if (seen[k]) throw InputError("edge {" + std::to_string(lo) + "," + std::to_string(lo + 1) + "} listed twice");
    seen[k] = true;
    inst.distances[k] = int_field(e, "distance", "edge");
    if (e.contains("capacity")) {
      overrides[k] = int_field(e, "capacity", "edge");
      ++override_count;
    }
  }
  if (override_count != 0) {
    if (override_count != edge_count)
      throw InputError("edge capacity overrides must be given for every edge or none");
    inst.edge_capacities = std::move(overrides);
  }

  for (const auto& g : array_field(j, "groups", "instance")) {
    Group group;
    group.id = string_field(g, "id", "group");
    group.origin = node_value(int_field(g, "node", "group"), "group node");
    group.size = int_field(g, "size", "group");
    group.weight = int_field(g, "weight", "group");
    inst.groups.push_back(std::move(group));
  }
  return inst;
}

json instance_to_json(const PathInstance& inst) {
  json edges = json::array();
  for (std::size_t k = 0; k < inst.distances.size(); ++k) {
    json e = {{"from", k + 1}, {"to", k + 2}, {"distance", inst.distances[k]}};
    if (!inst.edge_capacities.empty()) e["capacity"] = inst.edge_capacities[k];
    edges.push_back(std::move(e));
  }
  json groups = json::array();
  for (const auto& g : inst.groups) {
    groups.push_back({{"id", g.id}, {"node", g.origin}, {"size", g.size}, {"weight", g.weight}});
  }
  return {{"nodes", inst.nodes},
          {"facility", inst.facility},
          {"capacity", inst.capacity},
          {"edges", std::move(edges)},
          {"groups", std::move(groups)}};
}

PackingInstance packing_instance_from_json(const json& j) {
  PackingInstance inst;
  inst.capacity = int_field(j, "capacity", "packing instance");
  for (const auto& it : array_field(j, "items", "packing instance")) {
    PackingItem item;
    item.id = string_field(it, "id", "item");
    item.size = int_field(it, "size", "item");
    item.weight = int_field(it, "weight", "item");
    item.ready = int_field(it, "ready", "item");
    inst.items.push_back(std::move(item));
  }
  return inst;
}

json packing_instance_to_json(const PackingInstance& inst) {
  json items = json::array();
  for (const auto& it : inst.items) {
    items.push_back({{"id", it.id}, {"size", it.size}, {"weight", it.weight}, {"ready", it.ready}});
  }
  return {{"capacity", inst.capacity}, {"items", std::move(items)}};
}

Packing packing_from_json(const json& j, const PackingInstance& inst) {
  auto index = index_by_id(inst.items);
  Packing p;
  for (const auto& bin : array_field(j, "bins", "packing")) {
    if (!bin.is_array()) throw InputError("packing: every bin must be an array of ids");
    auto& out = p.bins.emplace_back();
    for (const auto& id : bin) {
      if (!id.is_string()) throw InputError("packing: item ids must be strings");
      auto it = index.find(id.get<std::string>());
      if (it == index.end()) throw InputError("packing: unknown item '" + id.get<std::string>() + "'");
      out.push_back(it->second);
    }
  }
  return p;
}

json packing_to_json(const Packing& p, const PackingInstance& inst, std::optional<std::int64_t> objective) {
  json bins = json::array();
  for (const auto& bin : p.bins) {
    json ids = json::array();
    for (auto i : bin) ids.push_back(inst.items.at(i).id);
    bins.push_back(std::move(ids));
  }
  json out = {{"bins", std::move(bins)}};
  if (objective) out["objective"] = *objective;
  return out;
}

Schedule schedule_from_json(const json& j, const PathInstance& inst) {
  auto index = index_by_id(inst.groups);
  Schedule s;
  for (const auto& m : array_field(j, "moves", "schedule")) {
    Move move;
    move.time = node_value(int_field(m, "time", "move"), "move time");
    move.node = node_value(int_field(m, "node", "move"), "move node");
    if (m.contains("to")) move.to = node_value(int_field(m, "to", "move"), "move target");
    for (const auto& id : array_field(m, "groups", "move")) {
      if (!id.is_string()) throw InputError("move: group ids must be strings");
      auto it = index.find(id.get<std::string>());
      if (it == index.end()) throw InputError("move: unknown group '" + id.get<std::string>() + "'");
      move.groups.push_back(it->second);
    }
    s.moves.push_back(std::move(move));
  }
  return s;
}

json schedule_to_json(const Schedule& s, const PathInstance& inst) {
  json moves = json::array();
  for (const auto& m : s.moves) {
    json ids = json::array();
    for (auto g : m.groups) ids.push_back(inst.groups.at(g).id);
    json move = {{"time", m.time}, {"node", m.node}, {"groups", std::move(ids)}};
    const int implied = m.node < inst.facility ? m.node + 1 : m.node - 1;
    if (m.to != 0 && m.to != implied) move["to"] = m.to;
    moves.push_back(std::move(move));
  }
  return {{"moves", std::move(moves)}};
}

json lower_bound_report(const Rational& bound, bool reduced_tau) {
  return {{"fractional_lb", to_fraction_string(bound)}, {"reduced_tau", reduced_tau}};
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

std::string read_text(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, std::string_view text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

}  // namespace dynaflow

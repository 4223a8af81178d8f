#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "dynaflow/dwsf.hpp"
#include "dynaflow/instgen.hpp"

using namespace dynaflow;
using namespace dynaflow::dwsf;

namespace {

std::int64_t max_arrival(const SimulationTrace& trace) {
  std::int64_t best = 0;
  for (const auto& a : trace.arrival_time) best = std::max(best, a.value_or(0));
  return best;
}

bool has_kind(const std::vector<ScheduleViolation>& v, ViolationKind kind) {
  return std::any_of(v.begin(), v.end(), [&](const auto& x) { return x.kind == kind; });
}

}  // namespace

TEST_CASE("side reduction of the weighted example") {
  const auto inst = instgen::fixture("fig1b").instance;
  const auto left = reduce_side(inst, Side::left);
  REQUIRE(left.packing.items.size() == 4);
  CHECK(left.packing.capacity == 3);
  std::vector<std::int64_t> ready;
  for (const auto& it : left.packing.items) ready.push_back(it.ready);
  CHECK(ready == std::vector<std::int64_t>{2, 2, 1, 1});
  CHECK(left.reduction.last_hop == 1);
  CHECK(left.reduction.weight_offset == 16);
  CHECK(left.reduction.groups == std::vector<std::size_t>{0, 1, 2, 3});

  const auto right = reduce_side(inst, Side::right);
  CHECK(right.packing.items.empty());
  CHECK(right.reduction.weight_offset == 0);
}

TEST_CASE("facility at the left end leaves the left side empty") {
  PathInstance inst;
  inst.nodes = 4;
  inst.facility = 1;
  inst.capacity = 5;
  inst.distances = {2, 3, 1};
  inst.groups = {{"x", 1, 2, 2}, {"y", 2, 1, 4}};
  CHECK(reduce_side(inst, Side::left).packing.items.empty());
  const auto right = reduce_side(inst, Side::right);
  REQUIRE(right.packing.items.size() == 2);
  CHECK(right.packing.items[0].ready == 1);
  CHECK(right.packing.items[1].ready == 5);
  CHECK(right.reduction.last_hop == 2);
  CHECK(right.reduction.weight_offset == 6);
}

TEST_CASE("assembling the narrated packing reproduces the narrated schedule") {
  const auto fx = instgen::fixture("fig1b");
  Packing left;
  left.bins = {{2}, {0}, {1}, {3}};
  const auto sched = assemble_schedule(fx.instance, left, Packing{});
  auto expected = fx.schedule;
  expected.normalize(fx.instance);
  CHECK(sched == expected);
  CHECK(assemble_schedule(fx.instance, Packing{}, Packing{}).moves.empty());

  Packing too_early;
  too_early.bins = {{0, 2}, {1}, {3}};
  CHECK_THROWS_AS(assemble_schedule(fx.instance, too_early, Packing{}), std::logic_error);
}

TEST_CASE("single group next to the facility departs at time 1") {
  PathInstance inst;
  inst.nodes = 2;
  inst.facility = 2;
  inst.capacity = 3;
  inst.distances = {4};
  inst.groups = {{"g", 2, 1, 1}};
  Packing p;
  p.bins = {{0}};
  const auto sched = assemble_schedule(inst, p, Packing{});
  REQUIRE(sched.moves.size() == 1);
  CHECK(sched.moves[0].time == 1);
  CHECK(sched.moves[0].node == 1);
  CHECK(schedule_objective(simulate(inst, sched), inst) == 5);
}

TEST_CASE("weighted example arrivals and objective") {
  const auto fx = instgen::fixture("fig1b");
  const auto trace = simulate(fx.instance, fx.schedule);
  CHECK(trace.issues.empty());
  CHECK(trace.arrival_time[2] == 2);
  CHECK(trace.arrival_time[0] == 3);
  CHECK(trace.arrival_time[1] == 4);
  CHECK(trace.arrival_time[3] == 5);
  CHECK(schedule_objective(trace, fx.instance) == 52);
  CHECK(validate_schedule(fx.instance, fx.schedule).empty());
  CHECK(trace.end_time == 5);
}

TEST_CASE("unit-group example") {
  const auto fx = instgen::fixture("fig1a");
  const auto trace = simulate(fx.instance, fx.schedule);
  CHECK(validate_schedule(fx.instance, fx.schedule).empty());
  CHECK(schedule_objective(trace, fx.instance) == 28);
  CHECK(max_arrival(trace) == 4);
  std::multiset<std::int64_t> arrivals;
  for (const auto& a : trace.arrival_time) arrivals.insert(*a);
  CHECK(arrivals == std::multiset<std::int64_t>{2, 2, 2, 2, 3, 3, 3, 3, 4, 4});
}

TEST_CASE("unit-group example with a length-2 second edge arrives later") {
  auto fx = instgen::fixture("fig1a");
  fx.instance.distances = {1, 2};
  const auto trace = simulate(fx.instance, fx.schedule);
  CHECK(validate_schedule(fx.instance, fx.schedule).empty());
  CHECK(schedule_objective(trace, fx.instance) == 38);
  CHECK(max_arrival(trace) == 5);
}

TEST_CASE("schedule violations") {
  const auto fx = instgen::fixture("fig1b");
  const auto& inst = fx.instance;

  Schedule back = fx.schedule;
  back.moves.push_back({5, 3, 2, {2}});
  CHECK(has_kind(validate_schedule(inst, back), ViolationKind::direction));

  Schedule crowd;
  crowd.moves = {{1, 1, 0, {0, 1}}, {2, 2, 0, {0, 1}}, {3, 2, 0, {2}}, {4, 2, 0, {3}}};
  const auto crowd_v = validate_schedule(inst, crowd);
  REQUIRE(has_kind(crowd_v, ViolationKind::capacity));
  for (const auto& v : crowd_v) {
    if (v.kind == ViolationKind::capacity) CHECK(v.message.find("capacity") != std::string::npos);
  }

  Schedule ghost = fx.schedule;
  ghost.moves.push_back({1, 2, 0, {0}});
  CHECK(has_kind(validate_schedule(inst, ghost), ViolationKind::presence));

  Schedule missing = fx.schedule;
  missing.moves.pop_back();
  const auto miss_v = validate_schedule(inst, missing);
  REQUIRE(has_kind(miss_v, ViolationKind::incomplete));
  CHECK_THROWS_WITH_AS(schedule_objective(simulate(inst, missing), inst), doctest::Contains("G22"),
                       IncompleteSchedule);

  Schedule nowhere;
  nowhere.moves = {{1, 1, 3, {0}}};
  CHECK(has_kind(validate_schedule(inst, nowhere), ViolationKind::invalid_move));
  Schedule early;
  early.moves = {{0, 1, 0, {0}}};
  CHECK(has_kind(validate_schedule(inst, early), ViolationKind::invalid_move));
}

TEST_CASE("groups already at the facility") {
  PathInstance inst;
  inst.nodes = 3;
  inst.facility = 2;
  inst.capacity = 2;
  inst.distances = {1, 1};
  inst.groups = {{"p", 1, 3, 2}, {"q", 2, 4, 2}};
  const auto sol = solve(inst);
  CHECK(sol.schedule.moves.empty());
  CHECK(sol.objective == 0);
  const auto trace = simulate(inst, Schedule{});
  CHECK(trace.arrival_time[0] == 0);
  CHECK(schedule_objective(trace, inst) == 0);
}

TEST_CASE("partition instance with a valid split") {
  // next-fit reaches 3C here because the instance order already alternates the halves
  const auto inst = instgen::gen_from_partition({2, 3, 3, 2});
  const auto sol = solve(inst);
  CHECK(sol.objective == 5 * 2 + 5 * 3);
  CHECK(sol.objective - sol.left.reduction.weight_offset == 3 * inst.capacity);
}

TEST_CASE("non-uniform capacity is unsupported by the solver") {
  const auto inst = instgen::fixture("fig1a").instance;
  CHECK_THROWS_AS(solve(inst), UnsupportedInstance);
  PathInstance bad = inst;
  bad.groups[0].size = 9;
  CHECK_THROWS_AS(solve(bad), InvalidInstance);
}

TEST_CASE("violation kind names") {
  CHECK(to_string(ViolationKind::capacity) == "capacity");
  CHECK(to_string(ViolationKind::direction) == "direction");
  CHECK(to_string(ViolationKind::incomplete) == "incomplete");
}

TEST_CASE("trace dump lists every time step") {
  const auto fx = instgen::fixture("fig1b");
  const auto text = simulate(fx.instance, fx.schedule).dump(fx.instance);
  CHECK(text.find("G21") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') >= 6);
}

TEST_CASE("solver output is feasible and decomposes exactly") {
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    instgen::RandomParams p;
    p.nodes = 1 + static_cast<int>(seed % 7);
    p.capacity = 1 + static_cast<std::int64_t>(seed % 9);
    p.max_size = p.capacity;
    p.max_distance = 1 + static_cast<std::int64_t>(seed % 4);
    p.groups = seed % 9;
    p.allow_at_facility = p.nodes == 1 || seed % 5 == 0;
    const auto inst = instgen::gen_random(seed, p);
    CAPTURE(seed);
    const auto sol = solve(inst);
    const auto violations = validate_schedule(inst, sol.schedule);
    CHECK(violations.empty());
    const auto trace = simulate(inst, sol.schedule);
    CHECK(schedule_objective(trace, inst) == sol.objective);
    CHECK(sol.objective == sol.left_packing_objective + sol.left.reduction.weight_offset +
                               sol.right_packing_objective + sol.right.reduction.weight_offset);

    // recurrence and conservation
    const std::size_t m = inst.groups.size();
    for (std::size_t t = 1; t < trace.occupancy.size(); ++t) {
      std::vector<int> seen(m, 0);
      for (std::size_t i = 0; i < trace.occupancy[t].size(); ++i) {
        std::set<std::size_t> expect(trace.occupancy[t - 1][i].begin(), trace.occupancy[t - 1][i].end());
        for (auto g : trace.from_left[t][i]) expect.insert(g);
        for (auto g : trace.from_right[t][i]) expect.insert(g);
        for (auto g : trace.departures[t][i]) expect.erase(g);
        CHECK(std::set<std::size_t>(trace.occupancy[t][i].begin(), trace.occupancy[t][i].end()) == expect);
        for (auto g : trace.occupancy[t][i]) ++seen[g];
      }
      for (auto c : seen) CHECK(c <= 1);
    }
    const auto a = static_cast<std::size_t>(inst.facility - 1);
    for (std::size_t g = 0; g < m; ++g) {
      const auto arrive = static_cast<std::size_t>(*trace.arrival_time[g]);
      for (std::size_t t = 0; t < trace.occupancy.size(); ++t) {
        const auto& cell = trace.occupancy[t][a];
        const bool there = std::find(cell.begin(), cell.end(), g) != cell.end();
        CHECK(there == (t >= arrive));
      }
    }
  }
}

TEST_CASE("delaying a schedule suffix never speeds anyone up") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    instgen::RandomParams p;
    p.nodes = 5;
    p.capacity = 6;
    p.max_size = 6;
    p.groups = 6;
    const auto inst = instgen::gen_random(seed, p);
    const auto sol = solve(inst);
    const auto base = simulate(inst, sol.schedule);
    const int cut = 1 + static_cast<int>(seed % 4);
    Schedule delayed = sol.schedule;
    for (auto& mv : delayed.moves)
      if (mv.time >= cut) mv.time += 2;
    CAPTURE(seed);
    CHECK(validate_schedule(inst, delayed).empty());
    const auto later = simulate(inst, delayed);
    for (std::size_t g = 0; g < inst.groups.size(); ++g) CHECK(*later.arrival_time[g] >= *base.arrival_time[g]);
  }
}

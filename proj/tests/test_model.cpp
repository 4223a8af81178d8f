#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "dynaflow/instgen.hpp"
#include "dynaflow/model.hpp"

using namespace dynaflow;

namespace {

bool has_issue(const std::vector<InstanceIssue>& issues, InstanceIssueKind kind) {
  return std::any_of(issues.begin(), issues.end(), [&](const auto& i) { return i.kind == kind; });
}

}  // namespace

TEST_CASE("fig1b data is a valid instance") {
  const auto inst = instgen::fixture("fig1b").instance;
  CHECK(check_instance(inst).empty());
  const auto checked = validate_instance(inst);
  CHECK(checked == inst);
  CHECK(checked.groups.size() == 4);
  CHECK(checked.capacity == 3);
}

TEST_CASE("single node without groups is valid") {
  PathInstance inst;
  inst.nodes = 1;
  inst.facility = 1;
  inst.capacity = 1;
  CHECK(check_instance(inst).empty());
}

TEST_CASE("oversized group is rejected") {
  auto inst = instgen::fixture("fig1b").instance;
  inst.groups[0].size = inst.capacity + 1;
  const auto issues = check_instance(inst);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].kind == InstanceIssueKind::exceeds_capacity);
  CHECK(issues[0].message.find("group exceeds capacity") != std::string::npos);
  CHECK_THROWS_AS(validate_instance(inst), InvalidInstance);
}

TEST_CASE("every violation is named") {
  PathInstance inst;
  inst.nodes = 3;
  inst.facility = 4;
  inst.capacity = 5;
  inst.distances = {0, 2};
  inst.groups = {{"x", 0, 1, 1}, {"x", 1, -2, 2}, {"y", 2, 1, 7}};
  const auto issues = check_instance(inst);
  CHECK(has_issue(issues, InstanceIssueKind::facility_range));
  CHECK(has_issue(issues, InstanceIssueKind::distance));
  CHECK(has_issue(issues, InstanceIssueKind::duplicate_id));
  CHECK(has_issue(issues, InstanceIssueKind::group_size));
  CHECK(has_issue(issues, InstanceIssueKind::group_weight));
  CHECK(has_issue(issues, InstanceIssueKind::group_origin));
  try {
    validate_instance(inst);
    FAIL("expected InvalidInstance");
  } catch (const InvalidInstance& e) {
    CHECK(e.issues().size() == issues.size());
  }
}

TEST_CASE("distance list must match the edge count") {
  PathInstance inst;
  inst.nodes = 3;
  inst.facility = 3;
  inst.capacity = 2;
  inst.distances = {1};
  CHECK(has_issue(check_instance(inst), InstanceIssueKind::distance_count));
}

TEST_CASE("per-edge capacity overrides bound the groups crossing them") {
  auto inst = instgen::fixture("fig1a").instance;
  CHECK(check_instance(inst).empty());
  CHECK_FALSE(inst.uniform_capacity());
  CHECK(inst.edge_capacity(1) == 3);
  CHECK(inst.edge_capacity(2) == 4);
  inst.groups[0].size = 4;  // crosses the capacity-3 edge
  CHECK(has_issue(check_instance(inst), InstanceIssueKind::exceeds_capacity));
}

TEST_CASE("path distance sums the edges in between") {
  PathInstance inst;
  inst.nodes = 4;
  inst.distances = {2, 3, 5};
  CHECK(inst.path_distance(1, 4) == 10);
  CHECK(inst.path_distance(4, 2) == 8);
  CHECK(inst.path_distance(3, 3) == 0);
}

TEST_CASE("schedule normalization merges and orders moves") {
  auto inst = instgen::fixture("fig1b").instance;
  Schedule s;
  s.moves = {{2, 2, 0, {0}}, {1, 1, 0, {1}}, {1, 1, 2, {0}}, {3, 2, 0, {}}};
  s.normalize(inst);
  REQUIRE(s.moves.size() == 2);
  CHECK(s.moves[0] == Move{1, 1, 2, {0, 1}});
  CHECK(s.moves[1] == Move{2, 2, 3, {0}});
  CHECK(s.horizon() == 2);
}

TEST_CASE("packing assignment and trim") {
  Packing p;
  p.bins = {{1}, {}, {0, 2}, {}, {}};
  CHECK(p.assignment(4) == std::vector<std::int64_t>{3, 1, 3, 0});
  p.trim();
  CHECK(p.bins.size() == 3);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynaflow/bpwrt.hpp"
#include "dynaflow/instgen.hpp"
#include "support.hpp"

using namespace dynaflow;
using namespace dynaflow::bpwrt;

TEST_CASE("eligibility threshold delays even ready times by one bin") {
  CHECK(eligibility_threshold(1) == 1);
  CHECK(eligibility_threshold(2) == 3);
  CHECK(eligibility_threshold(7) == 7);
  for (std::int64_t tau = 1; tau <= 40; ++tau) {
    // ceil((tau - 1) / 2) * 2 + 1 evaluated directly
    const std::int64_t direct = ((tau - 1) + 1) / 2 * 2 + 1;
    CHECK(eligibility_threshold(tau) == direct);
  }
}

TEST_CASE("greedy on the three-item example") {
  const auto inst = test::abd_instance();
  const auto res = solve_greedy(inst);
  CHECK(res.packing.bins == std::vector<std::vector<std::size_t>>{{0}, {1, 2}});
  CHECK(packing_objective(res.packing, inst) == 26);
  // the exhaustive reference finds 24 with {A, D}, {B}
  CHECK(test::brute_force_packing_opt(inst, 4) == 24);
  CHECK(res.trace.dump(inst) ==
        "bin 1 candidates 3 place A\n"
        "bin 1 candidates 2 close B does not fit\n"
        "bin 2 candidates 2 place B\n"
        "bin 2 candidates 1 place D\n");
}

TEST_CASE("even ready time holds an item back to the next odd bin") {
  PackingInstance inst{{{"G1", 3, 3, 2}, {"G2", 2, 1, 1}}, 4};
  const auto res = solve_greedy(inst);
  CHECK(res.packing.bins == std::vector<std::vector<std::size_t>>{{1}, {}, {0}});
  CHECK(packing_objective(res.packing, inst) == 10);
  CHECK(test::brute_force_packing_opt(inst, 4) == 7);
  CHECK(validate_packing(res.packing, inst).empty());
  CHECK(res.trace.steps[1].action == StepAction::jump);
  CHECK(res.trace.steps[1].next_bin == 3);
}

TEST_CASE("single item") {
  PackingInstance inst{{{"x", 1, 1, 1}}, 1};
  const auto res = solve_greedy(inst);
  CHECK(res.packing.bins == std::vector<std::vector<std::size_t>>{{0}});
  CHECK(packing_objective(res.packing, inst) == 1);
}

TEST_CASE("empty instance") {
  PackingInstance inst{{}, 5};
  const auto res = solve_greedy(inst);
  CHECK(res.packing.bins.empty());
  CHECK(packing_objective(res.packing, inst) == 0);
}

TEST_CASE("ties go to the earlier item") {
  PackingInstance inst{{{"p", 2, 2, 1}, {"q", 1, 1, 1}, {"r", 4, 4, 1}}, 4};
  const auto res = solve_greedy(inst);
  CHECK(res.packing.bins == std::vector<std::vector<std::size_t>>{{0, 1}, {2}});
}

TEST_CASE("oversized item is refused") {
  PackingInstance inst{{{"big", 5, 1, 1}}, 4};
  CHECK_THROWS_AS(solve_greedy(inst), std::invalid_argument);
}

TEST_CASE("objective of a packing") {
  const auto inst = test::abd_instance();
  Packing all_first;
  all_first.bins = {{0, 1, 2}};
  CHECK(packing_objective(all_first, inst) == 18);
  Packing missing;
  missing.bins = {{0}, {1}};
  CHECK_THROWS_AS(packing_objective(missing, inst), std::invalid_argument);
}

TEST_CASE("validator reports ready time and capacity violations") {
  PackingInstance inst{{{"a", 2, 1, 3}, {"b", 3, 1, 1}, {"c", 3, 1, 1}}, 5};
  Packing p;
  p.bins = {{1, 2}, {0}};
  const auto v = validate_packing(p, inst);
  REQUIRE(v.size() == 2);
  CHECK(v[0].kind == PackingViolationKind::capacity);
  CHECK(v[0].bin == 1);
  CHECK(v[0].message.find("capacity") != std::string::npos);
  CHECK(v[1].kind == PackingViolationKind::ready_time);
  CHECK(v[1].item == "a");
  CHECK(v[1].message.find("ready time") != std::string::npos);

  Packing dup;
  dup.bins = {{1}, {1, 2}};
  const auto d = validate_packing(dup, inst);
  CHECK(d.size() == 3);  // duplicate b, capacity of bin 2, a missing
}

TEST_CASE("paired view aggregates bins two at a time") {
  const auto inst = test::abd_instance();
  Packing p;
  p.bins = {{0}, {1, 2}};
  const auto view = paired_view(p, inst);
  REQUIRE(view.pairs.size() == 1);
  CHECK(view.pairs[0].size == 15);
  CHECK(view.pairs[0].weight == 18);
  CHECK(view.objective == 18);
  CHECK(pair_overflow_failures(view, inst.capacity).empty());

  Packing one;
  one.bins = {{0}};
  const auto single = paired_view(one, inst);
  REQUIRE(single.pairs.size() == 1);
  CHECK_FALSE(single.pairs[0].second_nonempty);

  PackingInstance wide = inst;
  wide.items.push_back({"E", 1, 1, 1});
  Packing four;
  four.bins = {{0}, {1}, {2}, {3}};
  const auto two = paired_view(four, wide);
  REQUIRE(two.pairs.size() == 2);
  CHECK(two.pairs[0].index == 1);
  CHECK(two.pairs[1].index == 2);
  CHECK(two.objective == 1 * 16 + 2 * 3);
}

TEST_CASE("greedy properties on random instances") {
  for (std::uint64_t seed = 1; seed <= 400; ++seed) {
    instgen::PackingParams params;
    params.items = 1 + seed % 8;
    params.capacity = 0;
    params.max_capacity = 12;
    params.max_ready = 5;
    const auto inst = instgen::gen_random_packing(seed, params);
    const auto res = solve_greedy(inst);
    CAPTURE(seed);

    CHECK(validate_packing(res.packing, inst).empty());
    CHECK(res.trace.replay() == res.packing);
    const auto again = solve_greedy(inst);
    CHECK(again.packing == res.packing);
    CHECK(again.trace == res.trace);

    const auto bin_of = res.packing.assignment(inst.items.size());
    for (std::size_t i = 0; i < inst.items.size(); ++i) {
      CHECK(bin_of[i] >= eligibility_threshold(inst.items[i].ready));
    }

    const auto view = paired_view(res.packing, inst);
    CHECK(pair_overflow_failures(view, inst.capacity).empty());
    const auto value = packing_objective(res.packing, inst);
    CHECK(value <= 2 * view.objective);
    if (inst.items.size() <= 5) {
      const auto opt = test::brute_force_packing_opt(inst, inst.max_ready() + static_cast<std::int64_t>(inst.items.size()));
      REQUIRE(opt);
      CHECK(value <= 2 * *opt);
    }
  }
}

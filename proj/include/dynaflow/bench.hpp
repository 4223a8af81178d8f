#pragma once

// Seeded benchmark of the greedy solvers against the fractional lower bound
// and, optionally, the exact optimum.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dynaflow/instgen.hpp"
#include "dynaflow/rational.hpp"

namespace dynaflow::bench {

enum class Problem { dwsf, bpwrt };

struct Options {
  std::uint64_t first_seed = 1;
  std::size_t seeds = 100;
  Problem problem = Problem::dwsf;
  instgen::RandomParams path;
  instgen::PackingParams packing;
  bool with_oracle = false;
  bool timing = true;
  unsigned threads = 1;
};

struct Row {
  std::uint64_t seed = 0;
  std::size_t groups = 0;
  std::int64_t greedy = 0;
  Rational lower_bound;
  std::optional<std::int64_t> optimum;
  bool budget_exceeded = false;
  double millis = 0.0;
};

/// Rows come back in seed order regardless of the thread count.
std::vector<Row> run(const Options& options);

/// Header, one line per row, then a "max" summary line.
std::string to_csv(const std::vector<Row>& rows, bool timing);

/// Worker count: hardware concurrency capped by DYNAFLOW_THREADS when set.
unsigned default_threads();

}  // namespace dynaflow::bench

#include "dynaflow/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "dynaflow/bpwrt.hpp"
#include "dynaflow/dwsf.hpp"
#include "dynaflow/oracles.hpp"
#include "dynaflow/relax.hpp"

namespace dynaflow::bench {

namespace {

Row run_packing(std::uint64_t seed, const Options& o) {
  Row row;
  row.seed = seed;
  const auto inst = instgen::gen_random_packing(seed, o.packing);
  row.groups = inst.items.size();
  const auto greedy = bpwrt::solve_greedy(inst);
  row.greedy = bpwrt::packing_objective(greedy.packing, inst);
  row.lower_bound = relax::solve_fractional_greedy(inst).value;
  if (o.with_oracle) {
    try {
      row.optimum = oracles::exact_packing_opt(inst).value;
    } catch (const BudgetExceeded&) {
      row.budget_exceeded = true;
    }
  }
  return row;
}

Row run_path(std::uint64_t seed, const Options& o) {
  Row row;
  row.seed = seed;
  const auto inst = instgen::gen_random(seed, o.path);
  row.groups = inst.groups.size();
  const auto sol = dwsf::solve(inst);
  row.greedy = sol.objective;
  std::int64_t optimum = 0;
  for (const auto* side : {&sol.left, &sol.right}) {
    row.lower_bound += relax::solve_fractional_greedy(side->packing).value + side->reduction.weight_offset;
    if (o.with_oracle && !row.budget_exceeded) {
      try {
        optimum += oracles::exact_packing_opt(side->packing).value + side->reduction.weight_offset;
      } catch (const BudgetExceeded&) {
        row.budget_exceeded = true;
      }
    }
  }
  if (o.with_oracle && !row.budget_exceeded) row.optimum = optimum;
  return row;
}

std::string fixed(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
  return std::string(buf, res.ptr);
}

std::optional<double> ratio(std::int64_t num, const Rational& den) {
  if (den == 0) return std::nullopt;
  return to_double(Rational(num) / den);
}

}  // namespace

unsigned default_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("DYNAFLOW_THREADS")) {
    unsigned cap = 0;
    auto [ptr, ec] = std::from_chars(env, env + std::char_traits<char>::length(env), cap);
    if (ec == std::errc() && cap > 0) n = std::min(n, cap);
  }
  return n;
}

std::vector<Row> run(const Options& o) {
  std::vector<Row> rows(o.seeds);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < o.seeds; k = next++) {
      const auto seed = o.first_seed + k;
      const auto start = std::chrono::steady_clock::now();
      rows[k] = o.problem == Problem::bpwrt ? run_packing(seed, o) : run_path(seed, o);
      rows[k].millis =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(o.threads, static_cast<unsigned>(o.seeds)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return rows;
}

std::string to_csv(const std::vector<Row>& rows, bool timing) {
  std::ostringstream out;
  out << "seed,m,greedy,fractional_lb,oracle_opt,ratio_vs_opt,ratio_vs_lb,wall_ms\n";
  std::optional<double> max_opt, max_lb;
  for (const auto& r : rows) {
    out << r.seed << ',' << r.groups << ',' << r.greedy << ',' << to_fraction_string(r.lower_bound) << ',';
    if (r.optimum) {
      out << *r.optimum;
    } else if (r.budget_exceeded) {
      out << "budget";
    }
    out << ',';
    if (r.optimum) {
      if (auto q = ratio(r.greedy, Rational(*r.optimum))) {
        out << fixed(*q);
        max_opt = std::max(max_opt.value_or(*q), *q);
      }
    }
    out << ',';
    if (auto q = ratio(r.greedy, r.lower_bound)) {
      out << fixed(*q);
      max_lb = std::max(max_lb.value_or(*q), *q);
    }
    out << ',' << (timing ? fixed(r.millis) : std::string("0.000000")) << '\n';
  }
  if (!rows.empty()) {
    out << "max,,,,," << (max_opt ? fixed(*max_opt) : "") << ',' << (max_lb ? fixed(*max_lb) : "") << ",\n";
  }
  return out.str();
}

}  // namespace dynaflow::bench

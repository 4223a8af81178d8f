#include "dynaflow/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>

#include <CLI11.hpp>

#include "dynaflow/bench.hpp"
#include "dynaflow/bpwrt.hpp"
#include "dynaflow/dwsf.hpp"
#include "dynaflow/instgen.hpp"
#include "dynaflow/io.hpp"
#include "dynaflow/oracles.hpp"
#include "dynaflow/relax.hpp"

namespace dynaflow::cli {

namespace {

PathInstance load_instance(const std::string& path) {
  return instance_from_json(parse_json(read_text(path)));
}

PackingInstance load_packing_instance(const std::string& path) {
  return packing_instance_from_json(parse_json(read_text(path)));
}

std::string summarize(const char* label, const dwsf::ReducedSide& side, const bpwrt::GreedyResult& greedy,
                      std::int64_t objective) {
  std::ostringstream out;
  out << label << ": " << side.packing.items.size() << " groups, " << greedy.packing.bins.size()
      << " bins, packing objective " << objective << ", offset " << side.reduction.weight_offset << '\n';
  for (std::size_t b = 0; b < greedy.packing.bins.size(); ++b) {
    if (greedy.packing.bins[b].empty()) continue;
    out << "  B" << b + 1 << ':';
    for (auto i : greedy.packing.bins[b]) out << ' ' << side.packing.items[i].id;
    out << '\n';
  }
  return out.str();
}

struct SolveArgs {
  std::string instance;
  std::string output = "-";
  std::string trace;
};

// "-" goes to the caller's stream rather than the process stdout.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
  } else {
    write_text(path, text);
  }
}

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const auto inst = load_instance(a.instance);
  const auto sol = dwsf::solve(inst);
  auto doc = schedule_to_json(sol.schedule, inst);
  doc["objective"] = sol.objective;
  emit(a.output, dump_canonical(doc), out);
  // keep stdout clean for the schedule when it goes there
  std::ostringstream report;
  report << "objective " << sol.objective << '\n';
  report << summarize("left", sol.left, sol.left_greedy, sol.left_packing_objective);
  report << summarize("right", sol.right, sol.right_greedy, sol.right_packing_objective);
  if (a.output == "-") {
    err << report.str();
  } else {
    out << report.str();
  }
  if (!a.trace.empty()) write_text(a.trace, dwsf::simulate(inst, sol.schedule).dump(inst));
  return kOk;
}

struct ValidateArgs {
  std::string instance;
  std::string schedule;
  std::string trace;
};

int cmd_validate(const ValidateArgs& a, std::ostream& out) {
  const auto inst = validate_instance(load_instance(a.instance));
  auto sched = schedule_from_json(parse_json(read_text(a.schedule)), inst);
  const auto violations = dwsf::validate_schedule(inst, sched);
  const auto trace = dwsf::simulate(inst, sched);
  if (!a.trace.empty()) write_text(a.trace, trace.dump(inst));
  if (!violations.empty()) {
    for (const auto& v : violations) out << to_string(v.kind) << ": " << v.message << '\n';
    return kInputError;
  }
  std::int64_t latest = 0;
  for (const auto& t : trace.arrival_time) latest = std::max(latest, *t);
  out << "ok objective " << dwsf::schedule_objective(trace, inst) << " max_arrival " << latest << '\n';
  return kOk;
}

struct OracleArgs {
  std::string instance;
  bool packing = false;
  int horizon = 0;
  oracles::SearchBudget budget;
  std::string output = "-";
};

int cmd_oracle(const OracleArgs& a, std::ostream& out) {
  json doc;
  if (a.packing) {
    const auto inst = load_packing_instance(a.instance);
    const auto opt = oracles::exact_packing_opt(inst);
    doc = {{"opt", opt.value}, {"witness", packing_to_json(opt.packing, inst)}};
  } else {
    const auto inst = validate_instance(load_instance(a.instance));
    const auto opt = oracles::exact_dwsf_opt(inst, a.horizon, a.budget);
    doc = {{"opt", opt.value}, {"witness", schedule_to_json(opt.schedule, inst)}};
  }
  emit(a.output, dump_canonical(doc), out);
  return kOk;
}

struct LowerBoundArgs {
  std::string instance;
  bool packing = false;
  bool reduced = false;
  bool mcf = false;
  std::string output = "-";
};

Rational packing_lower_bound(const PackingInstance& raw, const LowerBoundArgs& a) {
  const auto inst = a.reduced ? relax::reduced_ready_times(raw) : raw;
  return a.mcf ? oracles::exact_fractional_opt_mcf(inst).value : relax::solve_fractional_greedy(inst).value;
}

int cmd_lowerbound(const LowerBoundArgs& a, std::ostream& out) {
  Rational bound = 0;
  if (a.packing) {
    bound = packing_lower_bound(load_packing_instance(a.instance), a);
  } else {
    const auto inst = validate_instance(load_instance(a.instance));
    for (auto side : {dwsf::Side::left, dwsf::Side::right}) {
      const auto reduced = dwsf::reduce_side(inst, side);
      bound += packing_lower_bound(reduced.packing, a) + reduced.reduction.weight_offset;
    }
  }
  emit(a.output, dump_canonical(lower_bound_report(bound, a.reduced)), out);
  return kOk;
}

struct GenArgs {
  std::uint64_t seed = 1;
  instgen::RandomParams params;
  std::vector<std::int64_t> partition;
  std::string fixture;
  std::string schedule_output;
  std::string output = "-";
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  PathInstance inst;
  if (!a.fixture.empty()) {
    const auto f = instgen::fixture(a.fixture);
    inst = f.instance;
    if (!a.schedule_output.empty()) write_text(a.schedule_output, dump_canonical(schedule_to_json(f.schedule, inst)));
  } else if (!a.partition.empty()) {
    inst = instgen::gen_from_partition(a.partition);
  } else {
    inst = instgen::gen_random(a.seed, a.params);
  }
  emit(a.output, dump_canonical(instance_to_json(inst)), out);
  return kOk;
}

struct BenchArgs {
  bench::Options options;
  std::string problem = "dwsf";
  bool no_timing = false;
  std::string output = "-";
};

int cmd_bench(BenchArgs a, std::ostream& out) {
  a.options.problem = a.problem == "bpwrt" ? bench::Problem::bpwrt : bench::Problem::dwsf;
  a.options.timing = !a.no_timing;
  const auto rows = bench::run(a.options);
  emit(a.output, bench::to_csv(rows, a.options.timing), out);
  return kOk;
}

struct ExamplesArgs {
  std::string name;
  std::string write_dir;
};

int cmd_examples(const ExamplesArgs& a, std::ostream& out) {
  auto fixtures = instgen::worked_examples();
  if (!a.name.empty()) fixtures = {instgen::fixture(a.name)};
  int status = kOk;
  for (const auto& f : fixtures) {
    const auto violations = dwsf::validate_schedule(f.instance, f.schedule);
    out << f.name << ": " << f.description << "; reference objective " << f.objective;
    if (violations.empty()) {
      const auto trace = dwsf::simulate(f.instance, f.schedule);
      out << ", simulated " << dwsf::schedule_objective(trace, f.instance) << '\n';
    } else {
      out << ", schedule INVALID\n";
      status = kInputError;
    }
    if (!a.write_dir.empty()) {
      std::filesystem::create_directories(a.write_dir);
      const auto base = std::filesystem::path(a.write_dir) / f.name;
      write_text(base.string() + ".instance.json", dump_canonical(instance_to_json(f.instance)));
      write_text(base.string() + ".schedule.json", dump_canonical(schedule_to_json(f.schedule, f.instance)));
    }
  }
  return status;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted group evacuation on dynamic path networks", "dynaflow"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Run the 2-approximation and write a schedule");
  solve_cmd->add_option("--instance", solve.instance, "Instance JSON ('-' for stdin)")->required();
  solve_cmd->add_option("--output", solve.output, "Schedule JSON ('-' for stdout)");
  solve_cmd->add_option("--trace", solve.trace, "Write the occupancy table here");

  ValidateArgs validate;
  auto* validate_cmd = app.add_subcommand("validate", "Check a schedule and report its objective");
  validate_cmd->add_option("--instance", validate.instance)->required();
  validate_cmd->add_option("--schedule", validate.schedule)->required();
  validate_cmd->add_option("--trace", validate.trace, "Write the occupancy table here");

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact optimum of a small instance");
  oracle_cmd->add_option("--instance", oracle.instance)->required();
  oracle_cmd->add_flag("--packing", oracle.packing, "Input is a packing instance");
  oracle_cmd->add_option("--horizon", oracle.horizon, "Last departure time searched (default: derived)");
  oracle_cmd->add_option("--max-groups", oracle.budget.max_groups);
  oracle_cmd->add_option("--max-nodes", oracle.budget.max_nodes);
  oracle_cmd->add_option("--max-horizon", oracle.budget.max_horizon);
  oracle_cmd->add_option("--output", oracle.output);

  LowerBoundArgs lb;
  auto* lb_cmd = app.add_subcommand("lowerbound", "Fractional relaxation lower bound");
  lb_cmd->add_option("--instance", lb.instance)->required();
  lb_cmd->add_flag("--packing", lb.packing, "Input is a packing instance");
  lb_cmd->add_flag("--reduced", lb.reduced, "Use ready times ceil(tau/2)");
  lb_cmd->add_flag("--mcf", lb.mcf, "Solve with the min-cost-flow oracle instead of the greedy");
  lb_cmd->add_option("--output", lb.output);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--nodes", gen.params.nodes);
  gen_cmd->add_option("--facility", gen.params.facility, "0 draws it at random");
  gen_cmd->add_option("--capacity", gen.params.capacity);
  gen_cmd->add_option("--max-size", gen.params.max_size);
  gen_cmd->add_option("--max-weight", gen.params.max_weight);
  gen_cmd->add_option("--max-distance", gen.params.max_distance);
  gen_cmd->add_option("--groups", gen.params.groups);
  gen_cmd->add_flag("--allow-at-facility", gen.params.allow_at_facility);
  gen_cmd->add_option("--partition", gen.partition, "Partition items, e.g. 2,2,3,3")->delimiter(',');
  gen_cmd->add_option("--fixture", gen.fixture, "fig1a or fig1b");
  gen_cmd->add_option("--schedule-output", gen.schedule_output, "With --fixture: write its reference schedule");
  gen_cmd->add_option("--output", gen.output);

  BenchArgs bench_args;
  bench_args.options.threads = bench::default_threads();
  auto* bench_cmd = app.add_subcommand("bench", "Greedy vs. lower bound (and optimum) over seeds");
  bench_cmd->add_option("--first-seed", bench_args.options.first_seed);
  bench_cmd->add_option("--seeds", bench_args.options.seeds);
  bench_cmd->add_option("--problem", bench_args.problem)->check(CLI::IsMember({"dwsf", "bpwrt"}));
  bench_cmd->add_flag("--with-oracle", bench_args.options.with_oracle);
  bench_cmd->add_flag("--no-timing", bench_args.no_timing, "Write 0 in the wall time column");
  bench_cmd->add_option("--threads", bench_args.options.threads);
  bench_cmd->add_option("--nodes", bench_args.options.path.nodes);
  bench_cmd->add_option("--facility", bench_args.options.path.facility);
  bench_cmd->add_option("--capacity", bench_args.options.path.capacity);
  bench_cmd->add_option("--max-size", bench_args.options.path.max_size);
  bench_cmd->add_option("--max-weight", bench_args.options.path.max_weight);
  bench_cmd->add_option("--max-distance", bench_args.options.path.max_distance);
  bench_cmd->add_option("--groups", bench_args.options.path.groups);
  bench_cmd->add_option("--items", bench_args.options.packing.items);
  bench_cmd->add_option("--bin-capacity", bench_args.options.packing.capacity, "0 draws it per instance");
  bench_cmd->add_option("--max-bin-capacity", bench_args.options.packing.max_capacity);
  bench_cmd->add_option("--max-item-weight", bench_args.options.packing.max_weight);
  bench_cmd->add_option("--max-ready", bench_args.options.packing.max_ready);
  bench_cmd->add_option("--output", bench_args.output);

  ExamplesArgs examples;
  auto* examples_cmd = app.add_subcommand("examples", "List and check the worked-example fixtures");
  examples_cmd->add_option("--name", examples.name);
  examples_cmd->add_option("--write-dir", examples.write_dir, "Write instance and schedule files here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help, error;
    const int code = app.exit(e, help, error);
    out << help.str();
    err << error.str();
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve, out, err);
    if (*validate_cmd) return cmd_validate(validate, out);
    if (*oracle_cmd) return cmd_oracle(oracle, out);
    if (*lb_cmd) return cmd_lowerbound(lb, out);
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*bench_cmd) return cmd_bench(bench_args, out);
    if (*examples_cmd) return cmd_examples(examples, out);
  } catch (const UnsupportedInstance& e) {
    err << "unsupported instance: " << e.what() << '\n';
    return kUnsupported;
  } catch (const BudgetExceeded& e) {
    err << e.what() << '\n';
    return kBudgetExceeded;
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace dynaflow::cli

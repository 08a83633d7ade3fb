#include "speedup/claims.hpp"
#include "speedup/errors.hpp"
#include "speedup/rules.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace speedup;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kResource = 3;

// A model argument is either a preset name or a JSON file.
ModelSpec load_model(const std::string& arg) {
  if (arg == "iis") return ModelSpec::iis();
  if (arg == "iis+ts") return ModelSpec::iis_test_and_set();
  if (arg == "snapshot") return ModelSpec::snapshot();
  if (arg == "collect") return ModelSpec::collect();
  return model_from_json(read_json_file(arg));
}

Task load_task(const std::string& path) { return task_from_json(read_json_file(path)); }

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

void write_json(const std::string& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

struct Common {
  std::string task;
  std::string model = "iis";
  int threads = 1;
};

void add_task_model(CLI::App* cmd, Common& c) {
  cmd->add_option("--task", c.task, "task JSON file")->required();
  cmd->add_option("--model", c.model, "model JSON file or preset (iis, iis+ts, snapshot, collect)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Round-complexity toolkit for wait-free tasks in iterated shared-memory models"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "worker threads for closure computations")
      ->check(CLI::PositiveNumber);

  Common c;
  int rounds = 1;
  std::string out_path;

  auto* gen = app.add_subcommand("gen-protocol", "build the t-round protocol complex of an input simplex");
  int gen_n = 0;
  std::string sigma_path, dot_path;
  auto* gen_n_opt = gen->add_option("--n", gen_n, "use the simplex {(i, x) : 1 <= i <= n}");
  gen->add_option("--sigma", sigma_path, "input simplex JSON file")->excludes(gen_n_opt);
  gen->add_option("--model", c.model, "model JSON file or preset");
  gen->add_option("--rounds", rounds, "number of rounds")->check(CLI::NonNegativeNumber);
  gen->add_option("--out", out_path, "write the complex as JSON");
  gen->add_option("--dot", dot_path, "write the 1-skeleton as DOT");

  auto* solve_cmd = app.add_subcommand("solve", "decide t-round solvability");
  std::uint64_t budget = 0;
  std::string witness_path;
  add_task_model(solve_cmd, c);
  solve_cmd->add_option("--rounds", rounds)->required()->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--budget", budget, "search node budget (0 = unbounded)");
  solve_cmd->add_option("--witness", witness_path, "write the decision map as JSON");

  auto* closure_cmd = app.add_subcommand("closure", "compute the closure of a task");
  std::string beta_path;
  add_task_model(closure_cmd, c);
  closure_cmd->add_option("--beta", beta_path, "pin binary-consensus inputs (JSON id -> bit)");
  closure_cmd->add_option("--out", out_path, "output task file (default stdout)");

  auto* fixed_cmd = app.add_subcommand("fixed-point", "exit 0 iff the task equals its closure");
  add_task_model(fixed_cmd, c);

  auto* lb_cmd = app.add_subcommand("lower-bound", "round lower bound from the closure chain");
  int max_steps = 5, closed_form_factor = 0;
  bool force_full = false;
  add_task_model(lb_cmd, c);
  lb_cmd->add_option("--max-steps", max_steps)->check(CLI::PositiveNumber);
  lb_cmd->add_option("--closed-form-factor", closed_form_factor,
                     "try eps -> factor * eps as a shortcut after the first closure");
  lb_cmd->add_flag("--force-full", force_full, "always recompute the closure");

  auto* rule_cmd = app.add_subcommand("run-rule", "check a named decision rule");
  std::string rule_name;
  rule_cmd->add_option("--rule", rule_name)->required()->check(
      CLI::IsMember({"halving", "two-proc", "ts-consensus"}));
  add_task_model(rule_cmd, c);
  rule_cmd->add_option("--rounds", rounds)->check(CLI::PositiveNumber);

  auto* claims_cmd = app.add_subcommand("verify-claims", "run the claims manifest");
  std::string filter = "*", manifest_path = default_claims_path();
  claims_cmd->add_option("--filter", filter, "claim id glob");
  claims_cmd->add_option("--manifest", manifest_path, "manifest file");

  auto* export_cmd = app.add_subcommand("export", "re-serialize a complex or task");
  std::string in_path, format = "json";
  export_cmd->add_option("--in", in_path)->required();
  export_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "dot", "table"}));
  export_cmd->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  c.threads = threads;

  try {
    if (*gen) {
      const Simplex sigma = [&] {
        if (!sigma_path.empty()) return simplex_from_json(read_json_file(sigma_path));
        if (gen_n < 1) throw ParseError("give --n >= 1 or --sigma");
        std::vector<Vertex> vs;
        for (int i = 1; i <= gen_n; ++i) vs.push_back({ProcessId{i}, Value::symbol("x")});
        return Simplex(std::move(vs));
      }();
      const auto k = iterate_simplex(sigma, load_model(c.model), rounds);
      std::cout << "vertices: " << k.vertices().size() << "\nfacets: " << k.facet_count() << "\n";
      if (!out_path.empty()) write_json(out_path, complex_to_json(k));
      if (!dot_path.empty()) write_text(dot_path, to_dot(k));
      return kOk;
    }
    if (*solve_cmd) {
      SolveOptions opts;
      opts.node_budget = budget;
      const auto v = solve(load_task(c.task), load_model(c.model), rounds, opts);
      std::cout << (v.solvable ? "solvable" : "unsolvable") << " (" << v.explored << " nodes)\n";
      if (v.solvable && !witness_path.empty()) write_json(witness_path, map_to_json(*v.witness));
      return v.solvable ? kOk : kNegative;
    }
    if (*closure_cmd) {
      ClosureOptions opts;
      opts.threads = c.threads;
      const Task task = load_task(c.task);
      const Task closed = beta_path.empty()
                              ? closure(task, load_model(c.model), opts)
                              : closure_beta(task, beta_from_json(read_json_file(beta_path)), opts);
      write_json(out_path, task_to_json(closed));
      return kOk;
    }
    if (*fixed_cmd) {
      ClosureOptions opts;
      opts.threads = c.threads;
      const bool fixed = is_fixed_point(load_task(c.task), load_model(c.model), opts);
      std::cout << (fixed ? "fixed point" : "not a fixed point") << "\n";
      return fixed ? kOk : kNegative;
    }
    if (*lb_cmd) {
      LowerBoundOptions opts;
      opts.closure.threads = c.threads;
      opts.force_full = force_full;
      if (closed_form_factor > 0) opts.closed_form = scale_epsilon(closed_form_factor);
      const auto r = lower_bound_chain(load_task(c.task), load_model(c.model), max_steps, opts);
      std::cout << "lower bound: " << r.bound;
      if (r.budget_exhausted) std::cout << " (unbounded within " << max_steps << " steps)";
      std::cout << "\n";
      return kOk;
    }
    if (*rule_cmd) {
      const Task task = load_task(c.task);
      const bool ok = run_rule(task, load_model(c.model), named_rules(rule_name, task, rounds));
      std::cout << (ok ? "rule solves the task" : "rule does not solve the task") << "\n";
      return ok ? kOk : kNegative;
    }
    if (*claims_cmd) {
      const auto claims = select_claims(read_json_file(manifest_path), filter);
      if (claims.empty()) {
        std::cerr << "warning: no claim matches '" << filter << "'\n";
        return kOk;
      }
      bool all = true;
      for (const auto& claim : claims) {
        const auto r = run_claim(claim, c.threads);
        all = all && r.passed;
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.id << ": " << r.detail << "\n";
      }
      return all ? kOk : kNegative;
    }
    if (*export_cmd) {
      const Json j = read_json_file(in_path);
      const bool is_task = j.is_object() && j.contains("kind");
      if (is_task) {
        const Task task = task_from_json(j);
        if (format == "json") write_json(out_path, task_to_json(task));
        else if (format == "dot") write_text(out_path, to_dot(task.outputs));
        else write_text(out_path, delta_table(task));
      } else {
        const auto k = complex_from_json(j);
        if (format == "table") throw ParseError("table export needs a task");
        if (format == "json") write_json(out_path, complex_to_json(k));
        else write_text(out_path, to_dot(k));
      }
      return kOk;
    }
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

// Command-line front end: solve, generate, simulate, tradeoff, verify, bound.
//
// Exit codes: 0 success, 1 infeasible instance or failed verification,
// 2 usage error / unreadable or malformed files, 3 time limit reached.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rsscflp/bnp.hpp"
#include "rsscflp/compact.hpp"
#include "rsscflp/instance.hpp"
#include "rsscflp/instgen.hpp"
#include "rsscflp/io.hpp"
#include "rsscflp/rng.hpp"
#include "rsscflp/sim.hpp"
#include "rsscflp/threads.hpp"

namespace {

using namespace rsscflp;

std::string status_name(BnpStatus s) {
  switch (s) {
    case BnpStatus::kOptimal: return "optimal";
    case BnpStatus::kInfeasible: return "infeasible";
    case BnpStatus::kTimeLimit: return "time-limit";
  }
  return "unknown";
}

int status_exit_code(BnpStatus s) {
  switch (s) {
    case BnpStatus::kOptimal: return 0;
    case BnpStatus::kInfeasible: return 1;
    case BnpStatus::kTimeLimit: return 3;
  }
  return 2;
}

// Accepts "lo:hi:step" (inclusive range) or a comma-separated list.
std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> vals;
  if (text.find(':') != std::string::npos) {
    double lo = 0.0, hi = 0.0, step = 0.0;
    char trail = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &lo, &hi, &step, &trail) != 3 ||
        step <= 0.0 || hi < lo)
      throw std::runtime_error("bad range \"" + text + "\", expected lo:hi:step");
    const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (int k = 0; k < count; ++k) vals.push_back(lo + k * step);
    return vals;
  }
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) vals.push_back(std::stod(tok));
  if (vals.empty()) throw std::runtime_error("empty value list \"" + text + "\"");
  return vals;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> vals;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) vals.push_back(std::stoi(tok));
  if (vals.empty()) throw std::runtime_error("empty value list \"" + text + "\"");
  return vals;
}

struct SolveArgs {
  std::string instance_path;
  std::string out_path;
  double time_limit = 3600.0;
  bool no_fixing = false;
  int fixing_period = 1;
  std::string child_order = "open-first";
  std::string initial_pool = "singletons";
  int threads = 0;
  bool trace = false;
};

SolverConfig make_config(const SolveArgs& a) {
  SolverConfig cfg;
  cfg.time_limit_sec = a.time_limit;
  cfg.variable_fixing = !a.no_fixing;
  cfg.fixing_period = a.fixing_period;
  cfg.open_child_first = (a.child_order == "open-first");
  cfg.singleton_init_pool = (a.initial_pool == "singletons");
  cfg.threads = a.threads;
  cfg.trace = a.trace;
  cfg.trace_out = &std::cerr;
  return cfg;
}

void print_report(const SolveReport& rep) {
  std::printf("status       %s\n", status_name(rep.status).c_str());
  if (rep.incumbent)
    std::printf("objective    %lld\n", static_cast<long long>(rep.objective));
  if (std::isfinite(rep.best_bound))
    std::printf("best bound   %.6f\n", rep.best_bound);
  if (rep.status != BnpStatus::kInfeasible)
    std::printf("gap          %.4f%%\n", rep.gap_pct);
  if (rep.root_bound_valid)
    std::printf("root bound   %.6f\n", rep.root_bound);
  std::printf("nodes        %lld\n", static_cast<long long>(rep.nodes));
  std::printf("columns      %lld\n", static_cast<long long>(rep.columns_generated));
  std::printf("time         %.3fs total (master %.3fs, pricing %.3fs)\n",
              rep.time_total_sec, rep.time_master_sec, rep.time_pricing_sec);
}

// Wall-clock times go to stdout only; the file must be reproducible.
void write_solution(const Instance& inst, const SolveReport& rep,
                    const SolveArgs& a) {
  SolutionFile sol;
  sol.status = status_name(rep.status);
  if (rep.incumbent) {
    sol.has_assignment = true;
    sol.assignment = *rep.incumbent;
    sol.objective = rep.objective;
  }
  nlohmann::ordered_json j = solution_to_json(inst, sol);
  nlohmann::ordered_json stats;
  stats["nodes"] = rep.nodes;
  stats["columns"] = rep.columns_generated;
  stats["root_bound"] =
      rep.root_bound_valid ? nlohmann::ordered_json(rep.root_bound)
                           : nlohmann::ordered_json(nullptr);
  if (std::isfinite(rep.best_bound)) stats["best_bound"] = rep.best_bound;
  j["stats"] = std::move(stats);
  nlohmann::ordered_json cfg;
  cfg["time_limit_sec"] = a.time_limit;
  cfg["variable_fixing"] = !a.no_fixing;
  cfg["fixing_period"] = a.fixing_period;
  cfg["child_order"] = a.child_order;
  cfg["initial_pool"] = a.initial_pool;
  cfg["threads"] = resolve_threads(a.threads);
  j["config"] = std::move(cfg);
  write_json_file(j, a.out_path);
}

int run_solve(const SolveArgs& a) {
  Instance inst = load_instance(a.instance_path);
  SolveReport rep = solve(inst, make_config(a));
  print_report(rep);
  if (!a.out_path.empty()) {
    write_solution(inst, rep, a);
    std::printf("wrote %s\n", a.out_path.c_str());
  }
  return status_exit_code(rep.status);
}

struct GenArgs {
  std::string scheme = "t3";
  int m = 0;
  int n = 0;
  double ratio = 4.0;
  int gamma = 0;
  int sigma_lo = 100;
  int sigma_hi = 500;
  std::uint64_t seed = 0;
  std::string out_path;
};

int run_generate(const GenArgs& a) {
  GenSpec spec;
  spec.scheme = (a.scheme == "t4") ? GenScheme::kT4 : GenScheme::kT3;
  spec.m = a.m;
  spec.n = a.n;
  spec.target_ratio = a.ratio;
  spec.gamma = a.gamma;
  spec.sigma_milli = {a.sigma_lo, a.sigma_hi};
  spec.seed = a.seed;
  write_json_file(generate_json(spec), a.out_path);
  std::printf("wrote %s: scheme=%s m=%d n=%d ratio=%.2f gamma=%d seed=%llu\n",
              a.out_path.c_str(), a.scheme.c_str(), a.m, a.n, a.ratio, a.gamma,
              static_cast<unsigned long long>(a.seed));
  return 0;
}

struct SimArgs {
  std::string instance_path;
  std::string solution_path;
  std::string delta = "0:0.4:0.05";
  int scenarios = 5000;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out_path;
};

int run_simulate(const SimArgs& a) {
  Instance inst = load_instance(a.instance_path);
  SolutionFile sol = load_solution(a.solution_path, inst.m, inst.n);
  if (!sol.has_assignment)
    throw std::runtime_error("solution file carries no assignment to simulate");
  std::vector<double> deltas = parse_double_list(a.delta);

  std::string csv;
  csv += "# instance=" + a.instance_path + " solution=" + a.solution_path + "\n";
  csv += "# scenarios=" + std::to_string(a.scenarios) +
         " seed=" + std::to_string(a.seed) + " deltas=" + a.delta + "\n";
  csv += "delta,infeasible_scenarios,infeasibility_pct\n";
  for (std::size_t t = 0; t < deltas.size(); ++t) {
    SimSpec spec;
    spec.delta = deltas[t];
    spec.scenarios = a.scenarios;
    // One stream per noise level, shared scenario indices within it: the
    // same convention the trade-off grid uses.
    spec.seed = Rng::mix(a.seed, static_cast<std::uint64_t>(t));
    spec.threads = a.threads;
    SimResult res = evaluate_robustness(inst, sol.assignment, spec);
    const long long bad = std::llround(res.infeasibility_pct / 100.0 *
                                       static_cast<double>(a.scenarios));
    char row[128];
    std::snprintf(row, sizeof(row), "%.4f,%lld,%.4f\n", deltas[t], bad,
                  res.infeasibility_pct);
    csv += row;
  }
  if (a.out_path.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else {
    write_text_file(csv, a.out_path);
    std::printf("wrote %s (%zu noise %s, %d scenarios each)\n",
                a.out_path.c_str(), deltas.size(),
                deltas.size() == 1 ? "level" : "levels", a.scenarios);
  }
  return 0;
}

struct TradeoffArgs {
  std::string instance_path;
  std::string sigmas = "0,100,200,300,400,500";
  std::string gammas = "0,1,2,3,4,5";
  std::string deltas = "0:0.4:0.05";
  int scenarios = 5000;
  std::uint64_t seed = 0;
  double time_limit = 3600.0;
  bool independent_streams = false;
  int threads = 0;
  std::string out_path;
};

int run_tradeoff(const TradeoffArgs& a) {
  Instance inst = load_instance(a.instance_path);
  TradeoffSpec spec;
  spec.sigma_milli = parse_int_list(a.sigmas);
  spec.gammas = parse_int_list(a.gammas);
  spec.deltas = parse_double_list(a.deltas);
  spec.scenarios = a.scenarios;
  spec.seed = a.seed;
  spec.time_limit_sec = a.time_limit;
  spec.common_random_numbers = !a.independent_streams;
  spec.threads = a.threads;
  TradeoffResult result = tradeoff_grid(inst, spec);

  std::string csv;
  csv += "# instance=" + a.instance_path +
         " scenarios=" + std::to_string(a.scenarios) +
         " seed=" + std::to_string(a.seed) + "\n";
  csv += "# sigmas=" + a.sigmas + " gammas=" + a.gammas +
         " deltas=" + a.deltas + "\n";
  csv += result.csv;
  if (a.out_path.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else {
    write_text_file(csv, a.out_path);
    std::printf("wrote %s (%zu %s)\n", a.out_path.c_str(),
                result.cells.size(),
                result.cells.size() == 1 ? "cell" : "cells");
  }
  if (result.regression_valid)
    std::printf("additional capacity vs penalty cost: slope %.6f, R^2 %.6f\n",
                result.fit.slope, result.fit.r2);

  bool any_feasible = false;
  for (const auto& cell : result.cells)
    if (cell.status != "infeasible") any_feasible = true;
  return (!result.cells.empty() && !any_feasible) ? 1 : 0;
}

struct VerifyArgs {
  std::string instance_path;
  std::string solution_path;
};

int run_verify(const VerifyArgs& a) {
  Instance inst = load_instance(a.instance_path);
  SolutionFile sol = load_solution(a.solution_path, inst.m, inst.n);
  if (!sol.has_assignment) {
    if (sol.status == "infeasible") {
      std::printf("solution declares the instance infeasible; nothing to check\n");
      return 0;
    }
    std::fprintf(stderr, "verification failed: status \"%s\" but no assignment\n",
                 sol.status.c_str());
    return 1;
  }
  EvalResult ev = evaluate(inst, sol.assignment);
  switch (ev.status) {
    case EvalResult::Status::kStructuralError:
      std::fprintf(stderr, "verification failed: assignment is structurally "
                           "invalid (closed or out-of-range facility used)\n");
      return 1;
    case EvalResult::Status::kCapacityViolation: {
      std::string list;
      for (int i : ev.violated_facilities) list += " " + std::to_string(i);
      std::fprintf(stderr, "verification failed: worst-case load exceeds "
                           "capacity at facilities%s\n", list.c_str());
      return 1;
    }
    case EvalResult::Status::kOk:
      break;
  }
  if (ev.objective != sol.objective) {
    std::fprintf(stderr,
                 "verification failed: file objective %lld, recomputed %lld\n",
                 static_cast<long long>(sol.objective),
                 static_cast<long long>(ev.objective));
    return 1;
  }
  int open_count = 0;
  for (char o : sol.assignment.open) open_count += o;
  std::printf("ok: objective %lld, %d %s open\n",
              static_cast<long long>(ev.objective), open_count,
              open_count == 1 ? "facility" : "facilities");
  return 0;
}

struct BoundArgs {
  std::string instance_path;
  double time_limit = 3600.0;
};

int run_bound(const BoundArgs& a) {
  Instance inst = load_instance(a.instance_path);
  std::optional<double> ap = root_lp_bound(inst);
  if (!ap) {
    std::printf("infeasible: the root relaxation has no solution\n");
    return 1;
  }
  std::optional<double> rp2;
  bool rp2_available = true;
  try {
    rp2 = compact_lp_bound(inst);
  } catch (const std::invalid_argument&) {
    rp2_available = false;
  }
  if (rp2_available && !rp2) {
    std::printf("infeasible: the compact relaxation has no solution\n");
    return 1;
  }

  SolverConfig cfg;
  cfg.time_limit_sec = a.time_limit;
  SolveReport rep = solve(inst, cfg);
  if (rep.status == BnpStatus::kInfeasible) {
    std::printf("infeasible: branch-and-price proved no assignment exists\n");
    return 1;
  }

  std::printf("allocation LP bound   %.6f\n", *ap);
  if (rp2_available)
    std::printf("compact LP bound      %.6f\n", *rp2);
  else
    std::printf("compact LP bound      n/a (instance too large)\n");
  if (!rep.incumbent) {
    std::printf("best integer          none (time limit reached)\n");
    return 3;
  }
  const double zbest = static_cast<double>(rep.objective);
  std::printf("best integer          %lld (%s)\n",
              static_cast<long long>(rep.objective),
              status_name(rep.status).c_str());
  // LP values can exceed the integer optimum by rounding dust; clamp at zero
  // so the report never shows a negative gap.
  const double gap_bp =
      zbest != 0.0 ? std::max(0.0, (zbest - *ap) / zbest * 100.0) : 0.0;
  std::printf("gapBP                 %.4f%%\n", gap_bp);
  if (rp2_available) {
    const double gap_lp =
        zbest != 0.0 ? std::max(0.0, (zbest - *rp2) / zbest * 100.0) : 0.0;
    std::printf("gapLP                 %.4f%%\n", gap_lp);
  }
  return rep.status == BnpStatus::kTimeLimit ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact solver for single-source capacitated facility location "
               "with budgeted demand uncertainty"};
  app.require_subcommand(1);

  SolveArgs sa;
  CLI::App* solve_cmd = app.add_subcommand("solve", "run branch-and-price");
  solve_cmd->add_option("--instance", sa.instance_path, "instance JSON")->required();
  solve_cmd->add_option("--out", sa.out_path, "solution JSON to write");
  solve_cmd->add_option("--time-limit", sa.time_limit,
                        "seconds, non-positive disables (default 3600)");
  solve_cmd->add_flag("--no-fixing", sa.no_fixing,
                      "disable reduced-cost variable fixing");
  solve_cmd->add_option("--fixing-period", sa.fixing_period,
                        "nodes between fixing passes (default 1)");
  solve_cmd->add_option("--child-order", sa.child_order,
                        "DFS child order (default open-first)")
      ->check(CLI::IsMember({"open-first", "closed-first"}));
  solve_cmd->add_option("--initial-pool", sa.initial_pool,
                        "starting columns (default singletons)")
      ->check(CLI::IsMember({"singletons", "dummy"}));
  solve_cmd->add_option("--threads", sa.threads,
                        "pricing workers, 0 reads RSSCFLP_THREADS (default 0)");
  solve_cmd->add_flag("--trace", sa.trace, "log column generation to stderr");

  GenArgs ga;
  CLI::App* gen_cmd = app.add_subcommand("generate", "write a random instance");
  gen_cmd->add_option("--scheme", ga.scheme, "t3 or t4 (default t3)")
      ->check(CLI::IsMember({"t3", "t4"}));
  gen_cmd->add_option("--m", ga.m, "number of facilities")->required();
  gen_cmd->add_option("--n", ga.n, "number of customers")->required();
  gen_cmd->add_option("--ratio", ga.ratio,
                      "total capacity over total demand (default 4.0)");
  gen_cmd->add_option("--gamma", ga.gamma, "uncertainty budget per facility");
  gen_cmd->add_option("--sigma-lo", ga.sigma_lo,
                      "deviation factor lower bound, thousandths (default 100)");
  gen_cmd->add_option("--sigma-hi", ga.sigma_hi,
                      "deviation factor upper bound, thousandths (default 500)");
  gen_cmd->add_option("--seed", ga.seed, "random seed");
  gen_cmd->add_option("--out", ga.out_path, "instance JSON to write")->required();

  SimArgs ma;
  CLI::App* sim_cmd =
      app.add_subcommand("simulate", "Monte Carlo feasibility of a solution");
  sim_cmd->add_option("--instance", ma.instance_path, "instance JSON")->required();
  sim_cmd->add_option("--solution", ma.solution_path, "solution JSON")->required();
  sim_cmd->add_option("--delta", ma.delta,
                      "noise levels, lo:hi:step or list (default 0:0.4:0.05)");
  sim_cmd->add_option("--scenarios", ma.scenarios,
                      "scenarios per noise level (default 5000)");
  sim_cmd->add_option("--seed", ma.seed, "random seed");
  sim_cmd->add_option("--threads", ma.threads,
                      "workers, 0 reads RSSCFLP_THREADS (default 0)");
  sim_cmd->add_option("--out", ma.out_path, "CSV to write (default stdout)");

  TradeoffArgs ta;
  CLI::App* trade_cmd = app.add_subcommand(
      "tradeoff", "solve and simulate a whole (sigma, gamma) grid");
  trade_cmd->add_option("--instance", ta.instance_path, "instance JSON")->required();
  trade_cmd->add_option("--sigmas", ta.sigmas,
                        "deviation factors, thousandths "
                        "(default 0,100,200,300,400,500)");
  trade_cmd->add_option("--gammas", ta.gammas,
                        "uncertainty budgets (default 0,1,2,3,4,5)");
  trade_cmd->add_option("--deltas", ta.deltas,
                        "noise levels, lo:hi:step or list (default 0:0.4:0.05)");
  trade_cmd->add_option("--scenarios", ta.scenarios,
                        "scenarios per noise level (default 5000)");
  trade_cmd->add_option("--seed", ta.seed, "random seed");
  trade_cmd->add_option("--time-limit", ta.time_limit,
                        "seconds per grid cell (default 3600)");
  trade_cmd->add_flag("--independent-streams", ta.independent_streams,
                      "fresh scenario draws per cell instead of common "
                      "random numbers");
  trade_cmd->add_option("--threads", ta.threads,
                        "workers, 0 reads RSSCFLP_THREADS (default 0)");
  trade_cmd->add_option("--out", ta.out_path, "CSV to write (default stdout)");

  VerifyArgs va;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "recheck a solution against its instance");
  verify_cmd->add_option("--instance", va.instance_path, "instance JSON")->required();
  verify_cmd->add_option("--solution", va.solution_path, "solution JSON")->required();

  BoundArgs ba;
  CLI::App* bound_cmd = app.add_subcommand(
      "bound", "compare the allocation and compact LP bounds");
  bound_cmd->add_option("--instance", ba.instance_path, "instance JSON")->required();
  bound_cmd->add_option("--time-limit", ba.time_limit,
                        "seconds for the integer solve (default 3600)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(solve_cmd)) return run_solve(sa);
    if (app.got_subcommand(gen_cmd)) return run_generate(ga);
    if (app.got_subcommand(sim_cmd)) return run_simulate(ma);
    if (app.got_subcommand(trade_cmd)) return run_tradeoff(ta);
    if (app.got_subcommand(verify_cmd)) return run_verify(va);
    if (app.got_subcommand(bound_cmd)) return run_bound(ba);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}

#include "rsscflp/bnp.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "rsscflp/knapsack.hpp"
#include "rsscflp/pricing.hpp"
#include "rsscflp/threads.hpp"

namespace rsscflp {

namespace {

constexpr double kBoundTol = 1e-6;
constexpr double kIntegralityTol = 1e-6;
constexpr std::int64_t kNoIncumbent = std::numeric_limits<std::int64_t>::max();

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

struct Node {
  NodeFixes fixes;
  std::int64_t id = 0;
  double bound = 0.0;  // lower bound inherited from the parent
  std::int64_t incumbent_at_creation = kNoIncumbent;
};

struct NodeOutcome {
  enum Kind { kPruned, kInfeasible, kIntegral, kFractional, kTimeout };
  Kind kind = kPruned;
  double bound = 0.0;
  bool converged = false;  // the final master value is the node's LP optimum
  Projection proj;
  std::optional<BranchDecision> decision;
};

bool is_fractional(double v, double tol) {
  return std::abs(v - std::round(v)) > tol;
}

// Reads the integer assignment off an integral projection. A customer covered
// by more than one open facility keeps the cheapest one; dropping it from the
// others only lowers their load, so feasibility is preserved.
Assignment extract_assignment(const Instance& inst, const Projection& proj) {
  Assignment a;
  a.facility_of.assign(inst.n, -1);
  a.open.assign(inst.m, 0);
  for (int i = 0; i < inst.m; ++i) a.open[i] = proj.y[i] > 0.5 ? 1 : 0;
  for (int j = 0; j < inst.n; ++j) {
    int best = -1;
    for (int i = 0; i < inst.m; ++i) {
      if (proj.x[i][j] < 0.5) continue;
      if (best == -1 || inst.assign_cost[i][j] < inst.assign_cost[best][j])
        best = i;
    }
    if (best == -1)
      throw std::logic_error("solve: integral projection leaves a customer unserved");
    a.facility_of[j] = best;
  }
  return a;
}

// Subset of the support whose total is as large as possible without
// exceeding one half: exact enumeration for small supports, greedy beyond.
std::pair<std::vector<int>, double> half_subset(const std::vector<int>& support,
                                                const std::vector<double>& value) {
  const int k = static_cast<int>(support.size());
  const double cap = 0.5 + 1e-9;
  std::vector<int> chosen;
  double best = 0.0;
  if (k <= 14) {
    std::vector<double> sum(std::size_t{1} << k, 0.0);
    std::uint32_t best_mask = 0;
    for (std::uint32_t mask = 1; mask < sum.size(); ++mask) {
      const int low = std::countr_zero(mask);
      const double s = sum[mask & (mask - 1)] + value[low];
      sum[mask] = s;
      if (s <= cap && s > best + 1e-12) {
        best = s;
        best_mask = mask;
      }
    }
    for (int t = 0; t < k; ++t)
      if (best_mask >> t & 1u) chosen.push_back(support[t]);
  } else {
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (value[a] != value[b]) return value[a] > value[b];
      return a < b;
    });
    for (int t : order) {
      if (best + value[t] <= cap) {
        best += value[t];
        chosen.push_back(support[t]);
      }
    }
    std::sort(chosen.begin(), chosen.end());
  }
  return {std::move(chosen), best};
}

}  // namespace

std::optional<BranchDecision> select_branch(const Projection& proj, double tol) {
  const int m = static_cast<int>(proj.y.size());
  const int n = proj.x.empty() ? 0 : static_cast<int>(proj.x[0].size());

  // Most fractional facility first.
  int best_facility = -1;
  double best_score = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    if (!is_fractional(proj.y[i], tol)) continue;
    const double score = std::abs(proj.y[i] - 0.5);
    if (score < best_score) {
      best_score = score;
      best_facility = i;
    }
  }
  if (best_facility >= 0) {
    BranchDecision d;
    d.kind = BranchDecision::Kind::kFacility;
    d.facility = best_facility;
    return d;
  }

  // All y integral: dichotomy on the facility set of a fractionally served
  // customer, preferring the one whose support splits closest to 1/2.
  int best_customer = -1;
  best_score = std::numeric_limits<double>::infinity();
  std::vector<int> best_subset, best_support;
  std::vector<double> best_values;
  for (int j = 0; j < n; ++j) {
    std::vector<int> support;
    std::vector<double> values;
    bool any_fractional = false;
    for (int i = 0; i < m; ++i) {
      const double v = proj.x[i][j];
      if (v > tol) {
        support.push_back(i);
        values.push_back(v);
      }
      if (is_fractional(v, tol)) any_fractional = true;
    }
    if (!any_fractional) continue;
    auto [subset, kappa] = half_subset(support, values);
    const double score = std::abs(kappa - 0.5);
    if (score < best_score) {
      best_score = score;
      best_customer = j;
      best_subset = std::move(subset);
      best_support = std::move(support);
      best_values = std::move(values);
    }
  }
  if (best_customer < 0) return std::nullopt;

  std::vector<int> forbid_a = std::move(best_subset);
  if (forbid_a.empty()) {
    // Every share exceeds one half on its own; peel off the smallest one.
    int pick = -1;
    double low = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < best_support.size(); ++t) {
      if (best_values[t] < low) {
        low = best_values[t];
        pick = best_support[t];
      }
    }
    forbid_a.push_back(pick);
  }
  std::vector<int> forbid_b;
  std::set_difference(best_support.begin(), best_support.end(), forbid_a.begin(),
                      forbid_a.end(), std::back_inserter(forbid_b));
  if (forbid_a.empty() || forbid_b.empty())
    throw std::logic_error("select_branch: degenerate customer split");

  // Spread the facilities outside the support across both children so the
  // dichotomy stays a partition of the whole facility set.
  std::vector<int> rest;
  for (int i = 0, t = 0; i < m; ++i) {
    if (t < static_cast<int>(best_support.size()) && best_support[t] == i) {
      ++t;
      continue;
    }
    rest.push_back(i);
  }
  const std::size_t half = rest.size() / 2;
  forbid_a.insert(forbid_a.end(), rest.begin(), rest.begin() + half);
  forbid_b.insert(forbid_b.end(), rest.begin() + half, rest.end());
  std::sort(forbid_a.begin(), forbid_a.end());
  std::sort(forbid_b.begin(), forbid_b.end());

  BranchDecision d;
  d.kind = BranchDecision::Kind::kCustomerGub;
  d.customer = best_customer;
  d.forbid_first = std::move(forbid_a);
  d.forbid_second = std::move(forbid_b);
  return d;
}

SolveReport solve(const Instance& inst, const SolverConfig& config) {
  inst.validate();
  const auto t_start = std::chrono::steady_clock::now();
  const int threads = resolve_threads(config.threads);
  const bool limited = config.time_limit_sec > 0.0;
  std::ostream* trace =
      config.trace ? (config.trace_out ? config.trace_out : &std::cout) : nullptr;

  SolveReport report;

  std::optional<Assignment> incumbent;
  std::int64_t incumbent_obj = kNoIncumbent;
  if (config.incumbent_seed) {
    const EvalResult ev = evaluate(inst, config.incumbent_seed->first);
    if (ev.status != EvalResult::Status::kOk ||
        ev.objective != config.incumbent_seed->second)
      throw std::invalid_argument("solve: incumbent seed fails validation");
    incumbent = config.incumbent_seed->first;
    incumbent_obj = ev.objective;
  }

  Master master(inst, config.singleton_init_pool, NodeFixes::none(inst.m, inst.n));

  std::vector<Node> stack;
  {
    Node root;
    root.fixes = NodeFixes::none(inst.m, inst.n);
    root.incumbent_at_creation = incumbent_obj;
    stack.push_back(std::move(root));
  }
  std::int64_t next_node_id = 1;
  std::int64_t nodes_since_fixing = config.fixing_period;
  bool timed_out = false;
  double interrupted_bound = std::numeric_limits<double>::infinity();

  const auto out_of_time = [&] {
    return limited && elapsed_since(t_start) > config.time_limit_sec;
  };
  const auto can_prune = [&](double bound) {
    return incumbent_obj != kNoIncumbent &&
           bound >= static_cast<double>(incumbent_obj) - kBoundTol;
  };
  const auto fire_fix = [&](const Node& node, char kind, int facility,
                            int customer, const NodeFixes& before) {
    if (!config.on_fix) return;
    FixEvent ev;
    ev.node = node.id;
    ev.kind = kind;
    ev.facility = facility;
    ev.customer = customer;
    ev.before = &before;
    config.on_fix(ev);
  };

  // Reduced-cost fixing at a converged node. Every test is a conditional
  // Lagrangian bound against the incumbent: opening i costs at least the
  // facility's best reduced cost, closing i recovers its convexity dual, and
  // assigning j to i costs at least the best column of i through j.
  const auto run_fixing_pass = [&](Node& node, const RmpSolution& rmp,
                                   const std::vector<PricingResult>& prices) {
    const double lower = rmp.objective;
    const double cutoff = static_cast<double>(incumbent_obj) + kBoundTol;
    const auto crosses = [&](double shift) { return lower + shift > cutoff; };
    int applied = 0;

    for (int i = 0; i < inst.m; ++i) {
      if (node.fixes.y[i] != -1) continue;
      if (crosses(prices[i].reduced_cost)) {
        NodeFixes before = node.fixes;
        node.fixes.fix_y(i, 0);
        fire_fix(node, 'c', i, -1, before);
        ++applied;
        continue;
      }
      if (crosses(rmp.duals.mu[i])) {
        NodeFixes before = node.fixes;
        node.fixes.fix_y(i, 1);
        fire_fix(node, 'o', i, -1, before);
        ++applied;
      }
    }
    for (int i = 0; i < inst.m; ++i) {
      if (node.fixes.y[i] == 0) continue;
      const double base =
          static_cast<double>(inst.fixed_cost[i]) + rmp.duals.mu[i];
      for (int j = 0; j < inst.n; ++j) {
        if (node.fixes.x_forbidden(i, j, inst.n)) continue;
        const std::int64_t alone =
            inst.demand[j] + (inst.gamma[i] >= 1 ? inst.deviation[j] : 0);
        bool fix_it = false;
        if (alone > inst.capacity[i]) {
          fix_it = true;  // no robust-feasible set of facility i contains j
        } else {
          // The singleton {j} bounds the forced subproblem from below, so
          // only candidates passing this cheap test need the exact value.
          const double profit =
              rmp.duals.lambda[j] - static_cast<double>(inst.assign_cost[i][j]);
          if (crosses(base - profit)) {
            const double xi = xi_forced(inst, i, j, rmp.duals, node.fixes);
            fix_it = xi == knapsack::kMinusInfinity || crosses(base - xi);
          }
        }
        if (fix_it) {
          NodeFixes before = node.fixes;
          node.fixes.fix_x_zero(i, j, inst.n);
          fire_fix(node, 'x', i, j, before);
          ++applied;
        }
      }
    }
    return applied;
  };

  const auto process_node = [&](Node& node) {
    NodeOutcome out;
    out.bound = node.bound;
    master.configure(node.fixes);
    bool fixed_here = false;
    int iteration = 0;
    for (;;) {
      RmpSolution rmp;
      std::vector<PricingResult> prices;
      bool converged = false;
      for (;; ++iteration) {
        if (out_of_time()) {
          out.kind = NodeOutcome::kTimeout;
          return out;
        }
        const auto t_master = std::chrono::steady_clock::now();
        rmp = master.solve();
        report.time_master_sec += elapsed_since(t_master);
        const auto t_pricing = std::chrono::steady_clock::now();
        prices = price_all(inst, rmp.duals, node.fixes, threads);
        report.time_pricing_sec += elapsed_since(t_pricing);

        // Lagrangian bound: each facility either stays closed and recovers
        // its convexity dual or pays for its best column, whichever is less.
        double nu_sum = 0.0;
        bool improving = false;
        for (int i = 0; i < inst.m; ++i) {
          if (node.fixes.y[i] == 0) continue;
          const double rc = prices[i].reduced_cost;
          nu_sum += node.fixes.y[i] == 1 ? std::min(rc, 0.0)
                                         : std::min(rc, rmp.duals.mu[i]);
          if (rc < kReducedCostTol) improving = true;
        }
        const double lagrangian = rmp.objective + nu_sum;
        out.bound = std::max(out.bound, lagrangian);
        converged = !improving;
        if (config.on_colgen_iteration)
          config.on_colgen_iteration(
              {node.id, iteration, rmp.objective, lagrangian, nu_sum, converged});
        if (can_prune(out.bound)) {
          out.kind = NodeOutcome::kPruned;
          return out;
        }
        if (converged) break;

        int added_count = 0;
        for (int i = 0; i < inst.m; ++i) {
          if (node.fixes.y[i] == 0 || prices[i].reduced_cost >= kReducedCostTol)
            continue;
          bool added = false;
          master.add_column(prices[i].facility, std::move(prices[i].customers),
                            &added);
          if (added) ++added_count;
        }
        if (added_count == 0)
          throw std::logic_error(
              "solve: column generation stalled on duplicate columns");
        report.columns_generated += added_count;
      }

      if (master.dummy_active(rmp.z)) {
        out.kind = NodeOutcome::kInfeasible;
        return out;
      }
      out.bound = std::max(out.bound, rmp.objective);
      out.converged = true;
      if (can_prune(out.bound)) {
        out.kind = NodeOutcome::kPruned;
        return out;
      }

      out.proj = master.project(rmp.z);
      out.decision = select_branch(out.proj, kIntegralityTol);
      if (!out.decision) {
        out.kind = NodeOutcome::kIntegral;
        return out;
      }

      const bool gate =
          config.variable_fixing && incumbent_obj != kNoIncumbent &&
          (node.id == 0 || incumbent_obj < node.incumbent_at_creation) &&
          (fixed_here || nodes_since_fixing >= config.fixing_period);
      if (gate) {
        const int applied = run_fixing_pass(node, rmp, prices);
        nodes_since_fixing = 0;
        fixed_here = true;
        if (trace && applied > 0)
          *trace << "node " << node.id << ": fixed " << applied
                 << " variables\n";
        if (applied > 0) {
          master.configure(node.fixes);
          continue;  // the node LP changed; converge again before branching
        }
      }
      out.kind = NodeOutcome::kFractional;
      return out;
    }
  };

  while (!stack.empty()) {
    if (out_of_time()) {
      timed_out = true;
      break;
    }
    Node node = std::move(stack.back());
    stack.pop_back();
    if (can_prune(node.bound)) continue;
    ++report.nodes;
    ++nodes_since_fixing;

    NodeOutcome res = process_node(node);
    if (node.id == 0) {
      report.root_bound = res.bound;
      report.root_bound_valid =
          res.converged && res.kind != NodeOutcome::kInfeasible;
      if (trace && report.root_bound_valid)
        *trace << "root bound " << report.root_bound << " with "
               << master.pool().size() << " columns\n";
    }

    if (res.kind == NodeOutcome::kTimeout) {
      timed_out = true;
      interrupted_bound = res.bound;
      break;
    }
    if (res.kind == NodeOutcome::kPruned) {
      if (trace) *trace << "node " << node.id << ": pruned at " << res.bound << "\n";
      continue;
    }
    if (res.kind == NodeOutcome::kInfeasible) {
      if (trace) *trace << "node " << node.id << ": infeasible\n";
      continue;
    }
    if (res.kind == NodeOutcome::kIntegral) {
      Assignment candidate = extract_assignment(inst, res.proj);
      const EvalResult ev = evaluate(inst, candidate);
      if (ev.status != EvalResult::Status::kOk)
        throw std::logic_error("solve: integral master solution fails validation");
      if (ev.objective < incumbent_obj) {
        incumbent = std::move(candidate);
        incumbent_obj = ev.objective;
        if (trace)
          *trace << "node " << node.id << ": incumbent " << incumbent_obj << "\n";
      }
      continue;
    }

    const BranchDecision& d = *res.decision;
    Node child_keep, child_drop;
    child_keep.fixes = node.fixes;
    child_drop.fixes = node.fixes;
    bool keep_ok = true;
    bool drop_ok = true;
    if (d.kind == BranchDecision::Kind::kFacility) {
      keep_ok = child_keep.fixes.fix_y(d.facility, 1);
      drop_ok = child_drop.fixes.fix_y(d.facility, 0);
      if (trace)
        *trace << "node " << node.id << ": branch on facility " << d.facility
               << " at " << res.bound << "\n";
    } else {
      for (int i : d.forbid_first) child_keep.fixes.fix_x_zero(i, d.customer, inst.n);
      for (int i : d.forbid_second) child_drop.fixes.fix_x_zero(i, d.customer, inst.n);
      if (trace)
        *trace << "node " << node.id << ": branch on customer " << d.customer
               << " at " << res.bound << "\n";
    }
    child_keep.bound = child_drop.bound = res.bound;
    child_keep.incumbent_at_creation = child_drop.incumbent_at_creation =
        incumbent_obj;

    Node* first = config.open_child_first ? &child_keep : &child_drop;
    Node* second = config.open_child_first ? &child_drop : &child_keep;
    const bool first_ok = config.open_child_first ? keep_ok : drop_ok;
    const bool second_ok = config.open_child_first ? drop_ok : keep_ok;
    first->id = next_node_id++;
    second->id = next_node_id++;
    if (second_ok) stack.push_back(std::move(*second));
    if (first_ok) stack.push_back(std::move(*first));
  }

  report.time_total_sec = elapsed_since(t_start);
  if (timed_out) {
    report.status = BnpStatus::kTimeLimit;
    double lb = interrupted_bound;
    for (const Node& open : stack) lb = std::min(lb, open.bound);
    if (incumbent_obj != kNoIncumbent)
      lb = std::min(lb, static_cast<double>(incumbent_obj));
    if (!std::isfinite(lb)) lb = 0.0;
    report.best_bound = lb;
    if (incumbent_obj != kNoIncumbent) {
      report.incumbent = std::move(incumbent);
      report.objective = incumbent_obj;
      report.gap_pct =
          100.0 * std::max(0.0, static_cast<double>(incumbent_obj) - lb) /
          std::max(1.0, std::abs(static_cast<double>(incumbent_obj)));
    } else {
      report.gap_pct = 100.0;
    }
  } else if (incumbent_obj != kNoIncumbent) {
    report.status = BnpStatus::kOptimal;
    report.incumbent = std::move(incumbent);
    report.objective = incumbent_obj;
    report.best_bound = static_cast<double>(incumbent_obj);
  } else {
    report.status = BnpStatus::kInfeasible;
    report.best_bound = std::numeric_limits<double>::infinity();
  }
  return report;
}

std::optional<double> root_lp_bound(const Instance& inst) {
  inst.validate();
  const NodeFixes fixes = NodeFixes::none(inst.m, inst.n);
  Master master(inst, true, fixes);
  const int threads = resolve_threads(0);
  for (;;) {
    const RmpSolution rmp = master.solve();
    std::vector<PricingResult> prices = price_all(inst, rmp.duals, fixes, threads);
    bool improving = false;
    int added_count = 0;
    for (PricingResult& p : prices) {
      if (p.reduced_cost >= kReducedCostTol) continue;
      improving = true;
      bool added = false;
      master.add_column(p.facility, std::move(p.customers), &added);
      if (added) ++added_count;
    }
    if (!improving) {
      if (master.dummy_active(rmp.z)) return std::nullopt;
      return rmp.objective;
    }
    if (added_count == 0)
      throw std::logic_error(
          "root bound: column generation stalled on duplicate columns");
  }
}

}  // namespace rsscflp

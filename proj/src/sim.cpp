#include "rsscflp/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <thread>

#include "rsscflp/bnp.hpp"
#include "rsscflp/threads.hpp"

namespace rsscflp {

namespace {

std::string fmt(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

}  // namespace

std::vector<double> sample_scenario(const Instance& inst, double delta, Rng& rng) {
  std::vector<double> demand(inst.n);
  if (delta == 0.0) {
    for (int j = 0; j < inst.n; ++j)
      demand[j] = static_cast<double>(inst.demand[j]);
    return demand;
  }
  for (int j = 0; j < inst.n; ++j) {
    const double mean = static_cast<double>(inst.demand[j]);
    const double sd = mean * delta;
    const double cut = mean * (1.0 - 2.0 * delta);
    double v;
    do {
      v = mean + sd * rng.gaussian();
    } while (v < cut);
    demand[j] = v;
  }
  return demand;
}

SimResult evaluate_robustness(const Instance& inst, const Assignment& assignment,
                              const SimSpec& spec, const Baseline* baseline) {
  inst.validate();
  if (spec.scenarios <= 0)
    throw std::invalid_argument("simulate: scenario count must be positive");
  if (spec.delta < 0.0)
    throw std::invalid_argument("simulate: delta must be nonnegative");
  if (static_cast<int>(assignment.facility_of.size()) != inst.n ||
      static_cast<int>(assignment.open.size()) != inst.m)
    throw std::invalid_argument("simulate: assignment shape mismatch");
  const EvalResult ev = evaluate(inst, assignment);
  if (ev.status == EvalResult::Status::kStructuralError)
    throw std::invalid_argument("simulate: " + ev.message);

  std::vector<std::vector<int>> served(inst.m);
  for (int j = 0; j < inst.n; ++j) served[assignment.facility_of[j]].push_back(j);
  std::vector<int> open;
  for (int i = 0; i < inst.m; ++i)
    if (assignment.open[i]) open.push_back(i);

  const int workers =
      std::max(1, std::min(resolve_threads(spec.threads), spec.scenarios));
  std::vector<std::int64_t> infeasible(workers, 0);
  std::vector<std::vector<std::int64_t>> violations(
      workers, std::vector<std::int64_t>(inst.m, 0));
  const auto run = [&](int w) {
    for (int k = w; k < spec.scenarios; k += workers) {
      Rng rng(Rng::mix(spec.seed, static_cast<std::uint64_t>(k)));
      const std::vector<double> demand = sample_scenario(inst, spec.delta, rng);
      bool bad = false;
      for (int i : open) {
        double load = 0.0;
        for (int j : served[i]) load += demand[j];
        if (load > static_cast<double>(inst.capacity[i])) {
          ++violations[w][i];
          bad = true;
        }
      }
      if (bad) ++infeasible[w];
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }

  SimResult res;
  res.violations.assign(inst.m, 0);
  std::int64_t total_infeasible = 0;
  for (int w = 0; w < workers; ++w) {
    total_infeasible += infeasible[w];
    for (int i = 0; i < inst.m; ++i) res.violations[i] += violations[w][i];
  }
  res.infeasibility_pct = 100.0 * static_cast<double>(total_infeasible) /
                          static_cast<double>(spec.scenarios);

  for (int i : open) {
    res.objective += inst.fixed_cost[i];
    res.opened_capacity += inst.capacity[i];
  }
  for (int j = 0; j < inst.n; ++j)
    res.objective += inst.assign_cost[assignment.facility_of[j]][j];
  if (baseline && baseline->objective > 0 && baseline->opened_capacity > 0) {
    res.penalty_cost_pct =
        100.0 * static_cast<double>(res.objective - baseline->objective) /
        static_cast<double>(baseline->objective);
    res.additional_capacity_pct =
        100.0 *
        static_cast<double>(res.opened_capacity - baseline->opened_capacity) /
        static_cast<double>(baseline->opened_capacity);
  }
  return res;
}

Regression zero_intercept_fit(const std::vector<double>& x,
                              const std::vector<double>& y) {
  if (x.size() != y.size() || x.empty())
    throw std::invalid_argument("regression: point sets must be aligned and nonempty");
  double sxx = 0.0, sxy = 0.0, sy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += x[k] * x[k];
    sxy += x[k] * y[k];
    sy += y[k];
  }
  if (sxx == 0.0)
    throw std::invalid_argument("regression: all x are zero");
  Regression fit;
  fit.slope = sxy / sxx;
  const double ybar = sy / static_cast<double>(y.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double e = y[k] - fit.slope * x[k];
    ss_res += e * e;
    ss_tot += (y[k] - ybar) * (y[k] - ybar);
  }
  fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
  return fit;
}

TradeoffResult tradeoff_grid(const Instance& base, const TradeoffSpec& spec) {
  base.validate();
  if (spec.sigma_milli.empty() || spec.gammas.empty() || spec.deltas.empty())
    throw std::invalid_argument("tradeoff: sigma, gamma and delta sets must be nonempty");
  for (int s : spec.sigma_milli)
    if (s < 0 || s > 1000)
      throw std::invalid_argument("tradeoff: sigma must lie in [0, 1000] thousandths");
  for (int g : spec.gammas)
    if (g < 0) throw std::invalid_argument("tradeoff: gamma must be nonnegative");

  const auto cell_instance = [&](int sigma_milli, int gamma) {
    Instance inst = base;
    for (int j = 0; j < inst.n; ++j)
      inst.deviation[j] = inst.demand[j] * sigma_milli / 1000;
    inst.gamma.assign(inst.m, std::min(gamma, inst.n));
    return inst;
  };
  SolverConfig solver_config;
  solver_config.time_limit_sec = spec.time_limit_sec;
  solver_config.threads = spec.threads;

  std::optional<Baseline> baseline;
  {
    const SolveReport rep = solve(cell_instance(0, 0), solver_config);
    if (rep.status == BnpStatus::kOptimal) {
      Baseline b;
      b.objective = rep.objective;
      for (int i = 0; i < base.m; ++i)
        if (rep.incumbent->open[i]) b.opened_capacity += base.capacity[i];
      baseline = b;
    }
  }

  TradeoffResult out;
  std::string csv =
      "sigma,gamma,delta,infeasibility_pct,penalty_cost_pct,"
      "additional_capacity_pct,status,objective\n";
  std::vector<double> fit_x, fit_y;
  std::uint64_t cell_index = 0;
  for (int sigma : spec.sigma_milli) {
    for (int gamma : spec.gammas) {
      TradeoffCell cell;
      cell.sigma_milli = sigma;
      cell.gamma = gamma;
      const Instance inst = cell_instance(sigma, gamma);
      const SolveReport rep = solve(inst, solver_config);
      switch (rep.status) {
        case BnpStatus::kOptimal: cell.status = "optimal"; break;
        case BnpStatus::kInfeasible: cell.status = "infeasible"; break;
        case BnpStatus::kTimeLimit: cell.status = "time-limit"; break;
      }
      if (rep.incumbent) {
        cell.objective = rep.objective;
        for (std::size_t t = 0; t < spec.deltas.size(); ++t) {
          SimSpec sim;
          sim.delta = spec.deltas[t];
          sim.scenarios = spec.scenarios;
          sim.seed = spec.common_random_numbers
                         ? Rng::mix(spec.seed, t)
                         : Rng::mix(Rng::mix(spec.seed, t), 1 + cell_index);
          sim.threads = spec.threads;
          const SimResult r = evaluate_robustness(
              inst, *rep.incumbent, sim, baseline ? &*baseline : nullptr);
          cell.infeasibility_pct.push_back(r.infeasibility_pct);
          if (t == 0) {
            cell.penalty_cost_pct = r.penalty_cost_pct;
            cell.additional_capacity_pct = r.additional_capacity_pct;
          }
        }
        if (cell.status == "optimal" && sigma > 0 && gamma > 0 && baseline) {
          fit_x.push_back(cell.penalty_cost_pct);
          fit_y.push_back(cell.additional_capacity_pct);
        }
      }
      const std::string sigma_txt = fmt(static_cast<double>(sigma) / 1000.0, 3);
      for (std::size_t t = 0; t < spec.deltas.size(); ++t) {
        csv += sigma_txt + ',' + std::to_string(gamma) + ',' +
               fmt(spec.deltas[t], 4) + ',';
        if (rep.incumbent) {
          csv += fmt(cell.infeasibility_pct[t], 4) + ',' +
                 fmt(cell.penalty_cost_pct, 4) + ',' +
                 fmt(cell.additional_capacity_pct, 4) + ',' + cell.status + ',' +
                 std::to_string(cell.objective) + '\n';
        } else {
          csv += ",,," + cell.status + ",\n";
        }
      }
      out.cells.push_back(std::move(cell));
      ++cell_index;
    }
  }

  double sxx = 0.0;
  for (double v : fit_x) sxx += v * v;
  if (!fit_x.empty() && sxx > 0.0) {
    out.fit = zero_intercept_fit(fit_x, fit_y);
    out.regression_valid = true;
    csv += "# zero_intercept_slope=" + fmt(out.fit.slope, 6) + '\n';
    csv += "# r2=" + fmt(out.fit.r2, 6) + '\n';
  } else {
    csv += "# regression: not enough optimal cells with sigma > 0 and gamma > 0\n";
  }
  out.csv = std::move(csv);
  return out;
}

}  // namespace rsscflp

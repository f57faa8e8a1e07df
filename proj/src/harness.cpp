#include "mobiprod/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "mobiprod/errors.hpp"
#include "mobiprod/rng.hpp"
#include "mobiprod/sl_value.hpp"

namespace mobiprod {

std::vector<int> initial_module_config(const Instance& inst,
                                       const TableSet& tables) {
  const int L = inst.num_locations;
  const int Y = inst.total_modules;
  const double inf = std::numeric_limits<double>::infinity();
  // f[l][r]: least cost of locations l..L-1 holding exactly r modules.
  std::vector<std::vector<double>> f(L + 1, std::vector<double>(Y + 1, inf));
  f[L][0] = 0.0;
  for (int l = L - 1; l >= 0; --l) {
    const ValueTable& t = tables.tables[l];
    for (int r = 0; r <= Y; ++r)
      for (int u = 0; u <= std::min(r, inst.module_cap[l]); ++u)
        if (std::isfinite(f[l + 1][r - u]))
          f[l][r] = std::min(f[l][r], t.value(tables.pi_index, 0, u) + f[l + 1][r - u]);
  }
  if (!std::isfinite(f[0][Y]))
    throw ValidationError("initial configuration: module caps cannot hold Y");
  std::vector<int> u(L, 0);
  int r = Y;
  for (int l = 0; l < L; ++l) {
    const ValueTable& t = tables.tables[l];
    const double target = f[l][r];
    const double tol = 1e-9 * std::max(1.0, std::abs(target));
    for (int q = std::min(r, inst.module_cap[l]); q >= 0; --q) {
      const double c = t.value(tables.pi_index, 0, q) + f[l + 1][r - q];
      if (std::isfinite(f[l + 1][r - q]) && c <= target + tol) {
        u[l] = q;
        break;
      }
    }
    r -= u[l];
  }
  return u;
}

SamplePath sample_path(const Instance& inst, int horizon, std::uint64_t seed) {
  const ModulationModel& model = inst.model;
  const Belief pi = stationary_distribution(model).pi;
  Rng rng(seed);
  SamplePath path;
  path.states.push_back(rng.categorical(pi.values()));
  for (int t = 0; t < horizon; ++t) {
    const int next = rng.categorical(model.transition[path.states.back()]);
    path.states.push_back(next);
    std::vector<int> outcome(inst.num_locations);
    for (int l = 0; l < inst.num_locations; ++l)
      outcome[l] = rng.categorical(model.demand_pmf[l][next]);
    path.outcome.push_back(std::move(outcome));
    if (model.has_aod()) path.aod.push_back(rng.categorical(model.aod_pmf[next]));
  }
  return path;
}

TrajectoryResult simulate_trajectory(const Instance& inst,
                                     const PolicyConfig& config,
                                     const TableSet* tables, int horizon,
                                     std::uint64_t seed) {
  std::optional<TableSet> own;
  if (tables == nullptr) {
    own = build_tables(inst);
    tables = &*own;
  }
  const ModulationModel& model = inst.model;
  TrajectoryResult result;
  result.seed = seed;
  result.path = sample_path(inst, horizon, seed);

  SystemState state;
  state.s.assign(inst.num_locations, 0);
  state.u = initial_module_config(inst, *tables);
  state.x = config.mode == BeliefMode::kCO
                ? Belief::indicator(model.num_states(), result.path.states[0])
                : tables->pi;
  double discount = 1.0;
  for (int t = 0; t < horizon; ++t) {
    const Action a = act(config, inst, tables, state);
    check_action(inst, state, a);
    PeriodCost cost;
    const std::vector<int>& outcome = result.path.outcome[t];
    for (int l = 0; l < inst.num_locations; ++l) {
      const int d = model.outcomes[outcome[l]];
      const int y = a.order_up_to[l];
      cost.holding += inst.holding_cost[l] * std::max(y - d, 0);
      cost.backorder += inst.backorder_cost[l] * std::max(d - y, 0);
      cost.transship += a.transship[l] > 0
                            ? inst.transship_in_cost[l] * a.transship[l]
                            : inst.transship_out_cost[l] * -a.transship[l];
      cost.module_move +=
          inst.module_move_cost * std::abs(a.modules[l] - state.u[l]) / 2.0;
      state.s[l] = y - d;
    }
    state.u = a.modules;
    switch (config.mode) {
      case BeliefMode::kPO: {
        std::optional<int> z;
        if (model.has_aod()) z = result.path.aod[t];
        state.x = posterior(model, outcome, z, state.x);
        break;
      }
      case BeliefMode::kSS:
        break;
      case BeliefMode::kCO:
        state.x = Belief::indicator(model.num_states(), result.path.states[t + 1]);
        break;
    }
    result.total_discounted += discount * cost.total();
    result.total_undiscounted += cost.total();
    discount *= inst.beta;
    result.periods.push_back(cost);
    result.actions.push_back(a);
  }
  return result;
}

std::optional<double> savings(double cost_policy, double cost_dnf) {
  if (cost_dnf == 0.0) return std::nullopt;
  return 100.0 * (cost_dnf - cost_policy) / std::abs(cost_dnf);
}

std::uint64_t trajectory_seed(std::uint64_t master, const Instance& inst,
                              int trajectory) {
  return derive_seed({master, instance_hash(inst),
                      static_cast<std::uint64_t>(trajectory)});
}

namespace {

std::vector<PolicyConfig> with_baselines(std::vector<PolicyConfig> configs) {
  std::vector<PolicyConfig> out;
  for (const PolicyConfig& c : configs) {
    const bool has = std::any_of(out.begin(), out.end(), [&](const PolicyConfig& o) {
      return o.id == PolicyId::kDNF && o.theta == c.theta && o.mode == c.mode;
    });
    if (!has) out.push_back({PolicyId::kDNF, c.theta, c.mode});
    const bool dup = std::any_of(out.begin(), out.end(), [&](const PolicyConfig& o) {
      return o.id == c.id && o.theta == c.theta && o.mode == c.mode;
    });
    if (!dup) out.push_back(c);
  }
  return out;
}

}  // namespace

ExperimentReport run_experiment(const std::vector<Instance>& instances,
                                const ExperimentOptions& options) {
  if (options.reps < 1) throw ValidationError("experiment: reps must be >= 1");
  for (const PolicyConfig& c : options.policies) validate_config(c);
  const std::vector<PolicyConfig> configs = with_baselines(options.policies);
  ExperimentReport report;
  TableMemo memo;
  for (const Instance& inst : instances) {
    const TableSet tables = build_tables(inst, options.tables, &memo);
    const int horizon = options.horizon > 0 ? options.horizon : inst.horizon;
    const std::uint64_t hash = instance_hash(inst);
    for (const PolicyConfig& c : configs) {
      ReportRow row;
      row.instance_id = inst.id;
      row.policy = c.id;
      row.theta = c.theta;
      row.mode = c.mode;
      row.trajectories = options.reps;
      const auto start = std::chrono::steady_clock::now();
      for (int r = 0; r < options.reps; ++r) {
        const std::uint64_t seed =
            derive_seed({options.seed, hash, static_cast<std::uint64_t>(r)});
        const TrajectoryResult tr = simulate_trajectory(inst, c, &tables, horizon, seed);
        row.mean_cost += tr.total_discounted;
        row.mean_undiscounted += tr.total_undiscounted;
      }
      const std::chrono::duration<double> elapsed =
          std::chrono::steady_clock::now() - start;
      row.mean_cost /= options.reps;
      row.mean_undiscounted /= options.reps;
      row.sec_per_trajectory = options.timing ? elapsed.count() / options.reps : 0.0;
      report.rows.push_back(row);
      if (options.progress)
        options.progress(inst.id + " " + to_string(c.id) + " mean " +
                         std::to_string(row.mean_cost));
    }
  }
  fill_savings(report);
  return report;
}

}  // namespace mobiprod

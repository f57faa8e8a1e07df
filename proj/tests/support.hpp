#pragma once
// Shared fixtures for unit and acceptance tests: random models, toy
// instances and exhaustive action enumeration.
#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "mobiprod/harness.hpp"
#include "mobiprod/instance.hpp"
#include "mobiprod/instances.hpp"
#include "mobiprod/modulation.hpp"
#include "mobiprod/policies.hpp"
#include "mobiprod/rng.hpp"

namespace mobiprod::testing {

inline std::vector<double> random_pmf(Rng& rng, int n) {
  std::vector<double> p(n);
  double total = 0.0;
  for (double& v : p) total += (v = -std::log(rng.uniform_open0()));
  for (double& v : p) v /= total;
  return p;
}

// Random chain with every entry positive, demand support {0..d_max}.
inline ModulationModel random_model(Rng& rng, int num_states, int d_max,
                                    int num_locations) {
  ModulationModel m;
  for (int j = 0; j < num_states; ++j) m.transition.push_back(random_pmf(rng, num_states));
  for (int d = 0; d <= d_max; ++d) m.outcomes.push_back(d);
  m.demand_pmf.resize(num_locations);
  for (auto& loc : m.demand_pmf)
    for (int j = 0; j < num_states; ++j) loc.push_back(random_pmf(rng, d_max + 1));
  return m;
}

// Every row of P equal: the modulation state carries no information about
// the future, so a static belief is exact.
inline ModulationModel iid_model(Rng& rng, int num_states, int d_max,
                                 int num_locations) {
  ModulationModel m = random_model(rng, num_states, d_max, num_locations);
  const std::vector<double> row = random_pmf(rng, num_states);
  for (auto& r : m.transition) r = row;
  return m;
}

inline int positive(int v) { return v > 0 ? v : 0; }

// Every feasible (transship, modules) pair, enumerated independently of the
// policy code: zero-sum transshipments within on-hand stock and module
// vectors with sum Y, each lever frozen when its cost is prohibitive.
inline void for_each_relocation(
    const Instance& inst, const SystemState& state,
    const std::function<void(const std::vector<int>&, const std::vector<int>&)>& fn) {
  const int L = inst.num_locations;
  const bool ship = !inst.transship_disabled() && L > 1;
  const bool move = !inst.module_moves_disabled() && L > 1;
  int total_positive = 0;
  for (int v : state.s) total_positive += positive(v);
  std::vector<int> ds(L, 0), u(L, 0);
  std::function<void(int, int)> modules = [&](int l, int left) {
    if (l == L) {
      if (left == 0) fn(ds, u);
      return;
    }
    if (!move) {
      u[l] = state.u[l];
      modules(l + 1, left - u[l]);
      return;
    }
    for (int q = 0; q <= std::min(left, inst.module_cap[l]); ++q) {
      u[l] = q;
      modules(l + 1, left - q);
    }
  };
  std::function<void(int, int)> ships = [&](int l, int sum) {
    if (l == L) {
      if (sum == 0) modules(0, inst.total_modules);
      return;
    }
    const int lo = ship ? -positive(state.s[l]) : 0;
    const int hi = ship ? total_positive - positive(state.s[l]) : 0;
    for (int d = lo; d <= hi; ++d) {
      ds[l] = d;
      ships(l + 1, sum + d);
    }
  };
  ships(0, 0);
}

// Every feasible action: relocations times order-up-to levels.
inline void for_each_action(const Instance& inst, const SystemState& state,
                            const std::function<void(const Action&)>& fn) {
  for_each_relocation(inst, state, [&](const std::vector<int>& ds,
                                       const std::vector<int>& u) {
    Action a{ds, u, std::vector<int>(inst.num_locations)};
    std::function<void(int)> rec = [&](int l) {
      if (l == inst.num_locations) {
        fn(a);
        return;
      }
      const int base = state.s[l] + ds[l];
      for (int q = 0; q <= inst.capacity(l, u[l]); ++q) {
        a.order_up_to[l] = base + q;
        rec(l + 1);
      }
    };
    rec(0);
  });
}

// States visited by a policy along one PO trajectory (pre-decision).
inline std::vector<SystemState> visited_states(const Instance& inst,
                                               const TableSet& tables,
                                               const PolicyConfig& config,
                                               int horizon, std::uint64_t seed) {
  const SamplePath path = sample_path(inst, horizon, seed);
  SystemState state{tables.pi, std::vector<int>(inst.num_locations, 0),
                    initial_module_config(inst, tables)};
  std::vector<SystemState> out;
  for (int t = 0; t < horizon; ++t) {
    out.push_back(state);
    const Action a = act(config, inst, &tables, state);
    for (int l = 0; l < inst.num_locations; ++l)
      state.s[l] = a.order_up_to[l] - inst.model.outcomes[path.outcome[t][l]];
    state.u = a.modules;
    std::optional<int> z;
    if (inst.model.has_aod()) z = path.aod[t];
    state.x = posterior(inst.model, path.outcome[t], z, state.x);
  }
  return out;
}

}  // namespace mobiprod::testing

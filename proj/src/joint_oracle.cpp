#include "mobiprod/joint_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "mobiprod/errors.hpp"
#include "mobiprod/sl_value.hpp"

namespace mobiprod {

namespace {

// Product box of integer vectors with mixed-radix indexing, last location
// fastest.
struct Box {
  std::vector<int> lo, hi;
  std::size_t size() const {
    std::size_t n = 1;
    for (std::size_t l = 0; l < lo.size(); ++l) n *= hi[l] - lo[l] + 1;
    return n;
  }
  bool contains(const std::vector<int>& v) const {
    for (std::size_t l = 0; l < lo.size(); ++l)
      if (v[l] < lo[l] || v[l] > hi[l]) return false;
    return true;
  }
  std::size_t index(const std::vector<int>& v) const {
    std::size_t idx = 0;
    for (std::size_t l = 0; l < lo.size(); ++l)
      idx = idx * (hi[l] - lo[l] + 1) + (v[l] - lo[l]);
    return idx;
  }
  std::vector<int> point(std::size_t idx) const {
    std::vector<int> v(lo.size());
    for (std::size_t l = lo.size(); l-- > 0;) {
      const std::size_t w = hi[l] - lo[l] + 1;
      v[l] = lo[l] + static_cast<int>(idx % w);
      idx /= w;
    }
    return v;
  }
};

struct Outcome {
  double prob = 0.0;
  std::vector<int> demand;
  std::size_t next_gp = 0;
};

std::vector<Outcome> enumerate_outcomes(const Instance& inst, const Belief& x,
                                        const BeliefGrid& grid) {
  const ModulationModel& model = inst.model;
  const int L = inst.num_locations;
  const int M = model.num_outcomes();
  const int Z = model.has_aod() ? model.num_aod_symbols() : 1;
  std::vector<Outcome> out;
  std::vector<int> idx(L, 0);
  for (;;) {
    for (int z = 0; z < Z; ++z) {
      std::optional<int> aod;
      if (model.has_aod()) aod = z;
      const double p = sigma(model, idx, aod, x);
      if (p <= 0.0) continue;
      Outcome o;
      o.prob = p;
      for (int l = 0; l < L; ++l) o.demand.push_back(model.outcomes[idx[l]]);
      o.next_gp = nearest_grid_index(grid, posterior(model, idx, aod, x));
      out.push_back(std::move(o));
    }
    int l = L - 1;
    while (l >= 0 && ++idx[l] == M) idx[l--] = 0;
    if (l < 0) break;
  }
  return out;
}

int pos(int v) { return v > 0 ? v : 0; }

}  // namespace

std::vector<std::vector<int>> module_configurations(const Instance& inst) {
  std::vector<std::vector<int>> out;
  std::vector<int> u(inst.num_locations, 0);
  std::function<void(int, int)> rec = [&](int l, int left) {
    if (l == inst.num_locations - 1) {
      if (left <= inst.module_cap[l]) {
        u[l] = left;
        out.push_back(u);
      }
      return;
    }
    for (int q = 0; q <= std::min(left, inst.module_cap[l]); ++q) {
      u[l] = q;
      rec(l + 1, left - q);
    }
  };
  rec(0, inst.total_modules);
  return out;
}

double JointValueTable::value(std::size_t gp, const std::vector<int>& s,
                              const std::vector<int>& u) const {
  const auto it = std::find(configs.begin(), configs.end(), u);
  if (it == configs.end()) throw ValidationError("joint oracle: unknown module vector");
  Box box{std::vector<int>(num_locations, s_lo), std::vector<int>(num_locations, s_hi)};
  if (!box.contains(s)) throw ValidationError("joint oracle: inventory outside box");
  const std::size_t c = static_cast<std::size_t>(it - configs.begin());
  return values[(gp * configs.size() + c) * box.size() + box.index(s)];
}

JointValueTable joint_value_oracle(const Instance& inst, const BeliefGrid& grid,
                                   const JointOracleOptions& options) {
  inst.validate();
  if (options.horizon < 0) throw ValidationError("joint oracle: negative horizon");
  if (options.s_lo > options.s_hi) throw ValidationError("joint oracle: empty box");
  const int L = inst.num_locations;
  const int n = options.horizon;
  const int d_max = inst.model.max_demand();
  const bool ship = !inst.transship_disabled() && L > 1;
  const bool move = !inst.module_moves_disabled() && L > 1;
  int max_cap = 0;
  for (int l = 0; l < L; ++l)
    max_cap = std::max(max_cap,
                       inst.capacity(l, std::min(inst.module_cap[l], inst.total_modules)));

  JointValueTable table;
  table.grid = grid;
  table.horizon = n;
  table.s_lo = options.s_lo;
  table.s_hi = options.s_hi;
  table.num_locations = L;
  table.configs = module_configurations(inst);
  const std::size_t C = table.configs.size();
  const std::size_t P = grid.size();

  // boxes[j]: inventory vectors on which v_{n-j} is needed.
  std::vector<Box> boxes(n + 1);
  int lo = options.s_lo, hi = options.s_hi;
  for (int j = 0; j <= n; ++j) {
    boxes[j] = {std::vector<int>(L, lo), std::vector<int>(L, hi)};
    const double states = static_cast<double>(boxes[j].size()) * C * P;
    if (states > static_cast<double>(options.max_states))
      throw SizeExceeded("joint oracle: " + std::to_string(states) +
                         " states exceed the limit");
    lo = std::min(lo, 0) - d_max;
    hi = (ship ? L * pos(hi) : pos(hi)) + max_cap;
  }

  std::vector<std::vector<Outcome>> outcomes(P);
  for (std::size_t gp = 0; gp < P; ++gp)
    outcomes[gp] = enumerate_outcomes(inst, grid[gp], grid);

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> next(P * C * boxes[n].size(), 0.0);
  for (int j = n - 1; j >= 0; --j) {
    const Box& box = boxes[j];
    const Box& after = boxes[j + 1];
    // Order-up-to vectors reachable from box j.
    Box ybox{std::vector<int>(L, std::min(box.lo[0], 0)), after.hi};
    std::vector<double> cur(P * C * box.size(), inf);
    std::vector<double> w(ybox.size());
    std::vector<int> tail(L);
    for (std::size_t gp = 0; gp < P; ++gp) {
      for (std::size_t c2 = 0; c2 < C; ++c2) {
        // w(y) = E[sum_l c_l(y_l, d_l) + beta v(next belief, y - d, u')].
        for (std::size_t yi = 0; yi < ybox.size(); ++yi) {
          const std::vector<int> y = ybox.point(yi);
          double acc = 0.0;
          for (const Outcome& o : outcomes[gp]) {
            double stage = 0.0;
            for (int l = 0; l < L; ++l) {
              stage += period_cost(inst.backorder_cost[l], inst.holding_cost[l], y[l],
                                   o.demand[l]);
              tail[l] = y[l] - o.demand[l];
            }
            const double future =
                next[(o.next_gp * C + c2) * after.size() + after.index(tail)];
            acc += o.prob * (stage + inst.beta * future);
          }
          w[yi] = acc;
        }
        for (std::size_t c = 0; c < C; ++c) {
          if (c != c2 && !move) continue;
          const std::vector<int>& u = table.configs[c];
          const std::vector<int>& u2 = table.configs[c2];
          double module_cost = 0.0;
          for (int l = 0; l < L; ++l)
            module_cost += inst.module_move_cost * std::abs(u[l] - u2[l]) / 2.0;
          for (std::size_t si = 0; si < box.size(); ++si) {
            const std::vector<int> s = box.point(si);
            int positive = 0;
            for (int v : s) positive += pos(v);
            double best = inf;
            std::vector<int> ds(L, 0), y(L);
            // Enumerate transshipments with zero sum, then order-up-to levels.
            std::function<void(int, int, double)> ship_rec = [&](int l, int sum,
                                                                  double cost) {
              if (l == L) {
                if (sum != 0) return;
                std::function<void(int)> y_rec = [&](int k) {
                  if (k == L) {
                    best = std::min(best, cost + w[ybox.index(y)]);
                    return;
                  }
                  const int base = s[k] + ds[k];
                  for (int q = 0; q <= inst.capacity(k, u2[k]); ++q) {
                    y[k] = base + q;
                    y_rec(k + 1);
                  }
                };
                y_rec(0);
                return;
              }
              const int d_lo = ship ? -pos(s[l]) : 0;
              const int d_hi = ship ? positive - pos(s[l]) : 0;
              for (int d = d_lo; d <= d_hi; ++d) {
                ds[l] = d;
                const double c_ship = d > 0 ? inst.transship_in_cost[l] * d
                                            : inst.transship_out_cost[l] * -d;
                ship_rec(l + 1, sum + d, cost + c_ship);
              }
            };
            ship_rec(0, 0, module_cost);
            double& slot = cur[(gp * C + c) * box.size() + si];
            slot = std::min(slot, best);
          }
        }
      }
    }
    next = std::move(cur);
  }
  table.values = std::move(next);
  return table;
}

}  // namespace mobiprod

#include "mobiprod/sl_value.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "mobiprod/errors.hpp"

namespace mobiprod {

namespace {

constexpr double kHullTolerance = 1e-6;

// out[i] = min (or max) of g[i .. i+width].
template <typename Better>
void sliding_extreme(const std::vector<double>& g, int width, int count,
                     std::vector<double>& out, Better better) {
  out.resize(count);
  std::deque<int> window;
  int next = 0;
  for (int i = 0; i < count; ++i) {
    const int last = i + width;
    while (next <= last) {
      while (!window.empty() && !better(g[window.back()], g[next]))
        window.pop_back();
      window.push_back(next);
      ++next;
    }
    while (window.front() < i) window.pop_front();
    out[i] = g[window.front()];
  }
}

}  // namespace

void ValueTable::allocate() {
  const std::size_t cells = grid.size() * static_cast<std::size_t>(num_u());
  values_.assign(cells * num_s(), 0.0);
  bounds_.assign(cells * num_s(), 0.0);
  base_stock_.assign(cells, 0);
}

double ValueTable::value(std::size_t gp, int s, int u) const {
  if (s < s_min)
    return values_[index(gp, u, s_min)] + extension_slope * (s_min - s);
  if (s > s_max)
    return values_[index(gp, u, s_max)] + extension_slope * (s - s_max);
  return values_[index(gp, u, s)];
}

double ValueTable::truncation_bound(std::size_t gp, int s, int u) const {
  if (s < s_min)
    return bounds_[index(gp, u, s_min)] + 2.0 * extension_slope * (s_min - s);
  if (s > s_max)
    return bounds_[index(gp, u, s_max)] + 2.0 * extension_slope * (s - s_max);
  return bounds_[index(gp, u, s)];
}

double ValueTable::blended(double theta, std::size_t gp, int s, int u) const {
  return (1.0 - theta) * value(gp, s, u_max) + theta * value(gp, s, u);
}

double blended_value(const ValueTable& table, double theta, std::size_t gp,
                     int s, int u) {
  return table.blended(theta, gp, s, u);
}

std::pair<int, int> default_s_range(const Instance& instance, int l) {
  const int span = instance.span_multiplier *
                   (instance.module_size * instance.module_cap[l] +
                    instance.fixed_capacity[l] + instance.model.max_demand());
  return {-span, span};
}

double default_epsilon(double beta) {
  if (beta <= 0.0) return std::numeric_limits<double>::infinity();
  return 1e-6 * (1.0 - beta) / (2.0 * beta);
}

double period_cost(double backorder, double holding, int y, int d) {
  return y >= d ? holding * (y - d) : backorder * (d - y);
}

double expected_period_cost(std::span<const double> pmf,
                            std::span<const int> outcomes, double backorder,
                            double holding, int y) {
  double total = 0.0;
  for (std::size_t n = 0; n < pmf.size(); ++n)
    if (pmf[n] != 0.0)
      total += pmf[n] * period_cost(backorder, holding, y, outcomes[n]);
  return total;
}

int newsvendor_level(std::span<const double> pmf, std::span<const int> outcomes,
                     double backorder, double holding) {
  const double ratio =
      backorder + holding > 0.0 ? backorder / (backorder + holding) : 0.0;
  std::vector<std::size_t> order(pmf.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return outcomes[a] < outcomes[b];
  });
  double cdf = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    // Accumulate every outcome sharing this demand value before testing.
    cdf += pmf[order[k]];
    if (k + 1 < order.size() && outcomes[order[k + 1]] == outcomes[order[k]])
      continue;
    if (cdf >= ratio - 1e-12) return outcomes[order[k]];
  }
  return outcomes[order.back()];
}

int myopic_base_stock(const Instance& instance, int l, const Belief& x) {
  const auto pmf = predictive_pmf(instance.model, l, x);
  return newsvendor_level(pmf, instance.model.outcomes,
                          instance.backorder_cost[l], instance.holding_cost[l]);
}

ValueTable static_value_iteration(const Instance& instance, int l,
                                  const BeliefGrid& grid,
                                  const SlValueOptions& options) {
  const auto range = default_s_range(instance, l);
  ValueTable table;
  table.location = l;
  table.grid = grid;
  table.s_min = options.s_min.value_or(range.first);
  table.s_max = options.s_max.value_or(range.second);
  table.u_max = instance.module_cap[l];
  if (table.s_min > table.s_max)
    throw ValidationError("static_value_iteration: empty s range");
  if (!(instance.beta >= 0.0 && instance.beta < 1.0))
    throw ValidationError("static_value_iteration: beta must lie in [0, 1)");
  table.allocate();

  const ModulationModel& model = instance.model;
  const double b = instance.backorder_cost[l];
  const double h = instance.holding_cost[l];
  const double beta = instance.beta;
  const int num_s = table.num_s();
  const int num_u = table.num_u();
  const int max_cap = instance.capacity(l, table.u_max);
  const int num_y = num_s + max_cap;
  const int M = model.num_outcomes();
  const double eps = options.epsilon.value_or(default_epsilon(beta));

  // Per grid point: predictive pmf and the one-period cost over y.
  std::vector<std::vector<double>> pmf(grid.size());
  std::vector<std::vector<double>> period(grid.size());
  for (std::size_t gp = 0; gp < grid.size(); ++gp) {
    pmf[gp] = predictive_pmf(model, l, grid[gp]);
    period[gp].resize(num_y);
    for (int k = 0; k < num_y; ++k)
      period[gp][k] =
          expected_period_cost(pmf[gp], model.outcomes, b, h, table.s_min + k);
  }

  auto& values = table.raw_values();
  auto& bounds = table.raw_bounds();
  auto& base = table.raw_base_stock();
  std::vector<double> next_values(values.size());
  std::vector<double> next_bounds(bounds.size());
  std::vector<double> g(num_y), eb(num_y), window_out;

  double lip = 0.0;  // Lipschitz constant of the current iterate
  const int target = options.horizon.value_or(options.max_iters);
  int iter = 0;
  double residual = std::numeric_limits<double>::infinity();
  while (iter < target) {
    residual = 0.0;
    for (std::size_t gp = 0; gp < grid.size(); ++gp) {
      for (int u = 0; u < num_u; ++u) {
        const std::size_t cell = gp * num_u + u;
        const double* v = &values[cell * num_s];
        const double* e = &bounds[cell * num_s];
        const int cap = instance.capacity(l, u);
        const int ny = num_s + cap;
        for (int k = 0; k < ny; ++k) {
          const int y = table.s_min + k;
          double future = 0.0, err = 0.0;
          for (int n = 0; n < M; ++n) {
            const double p = pmf[gp][n];
            if (p == 0.0) continue;
            const int t = y - model.outcomes[n];
            double vt, et;
            if (t < table.s_min) {
              const int o = table.s_min - t;
              vt = v[0] + lip * o;
              et = e[0] + 2.0 * lip * o;
            } else if (t > table.s_max) {
              const int o = t - table.s_max;
              vt = v[num_s - 1] + lip * o;
              et = e[num_s - 1] + 2.0 * lip * o;
            } else {
              vt = v[t - table.s_min];
              et = e[t - table.s_min];
            }
            future += p * vt;
            err += p * et;
          }
          g[k] = period[gp][k] + beta * future;
          eb[k] = beta * err;
        }
        g.resize(ny);
        eb.resize(ny);
        sliding_extreme(g, cap, num_s, window_out,
                        [](double a, double c) { return a < c; });
        double* nv = &next_values[cell * num_s];
        for (int i = 0; i < num_s; ++i) {
          residual = std::max(residual, std::abs(window_out[i] - v[i]));
          nv[i] = window_out[i];
        }
        sliding_extreme(eb, cap, num_s, window_out,
                        [](double a, double c) { return a > c; });
        std::copy(window_out.begin(), window_out.end(),
                  next_bounds.begin() + cell * num_s);

        const double gmin = *std::min_element(g.begin(), g.end());
        const double tol = 1e-9 * std::max(1.0, std::abs(gmin));
        int k = 0;
        while (g[k] > gmin + tol) ++k;
        base[cell] = table.s_min + k;
        g.resize(num_y);
        eb.resize(num_y);
      }
    }
    values.swap(next_values);
    bounds.swap(next_bounds);
    lip = std::max(b, h) + beta * lip;
    table.extension_slope = lip;
    ++iter;
    table.iterations = iter;
    table.residual = residual;
    if (options.on_iterate) options.on_iterate(iter, table);
    if (!options.horizon && residual < eps) break;
  }
  if (!options.horizon && !(residual < eps))
    throw ConvergenceFailure("static_value_iteration: no convergence after " +
                                 std::to_string(iter) + " iterations",
                             residual);
  return table;
}

std::vector<Facet> lower_hull_facets(std::span<const double> f, int x0) {
  if (f.empty()) return {};
  if (f.size() == 1) return {Facet{0.0, f[0]}};
  // Monotone chain over points sorted by x.
  std::vector<int> hull;
  for (int i = 0; i < static_cast<int>(f.size()); ++i) {
    while (hull.size() >= 2) {
      const int a = hull[hull.size() - 2];
      const int b = hull.back();
      // Drop b when it lies on or above the chord from a to i.
      const double cross = (f[b] - f[a]) * (i - a) - (f[i] - f[a]) * (b - a);
      if (cross >= 0.0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(i);
  }
  std::vector<Facet> facets;
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    const int a = hull[k], b = hull[k + 1];
    const double slope = (f[b] - f[a]) / (b - a);
    const double xa = static_cast<double>(x0 + a);
    facets.push_back({slope, f[a] - slope * xa});
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double err =
        std::abs(evaluate_facets(facets, static_cast<double>(x0) + i) - f[i]);
    if (err > kHullTolerance)
      throw NonConvexTable("lower_hull_facets: function is not convex at " +
                           std::to_string(x0 + static_cast<int>(i)) +
                           " (error " + std::to_string(err) + ")");
  }
  return facets;
}

double evaluate_facets(std::span<const Facet> facets, double arg) {
  double best = -std::numeric_limits<double>::infinity();
  for (const Facet& f : facets) best = std::max(best, f(arg));
  return best;
}

FacetSet extract_facets(const ValueTable& table, std::size_t gp) {
  FacetSet set;
  set.s_min = table.s_min;
  std::vector<double> f(table.num_s());
  for (int u = 0; u <= table.u_max; ++u) {
    for (int s = table.s_min; s <= table.s_max; ++s)
      f[s - table.s_min] = table.value(gp, s, u);
    set.over_s.push_back(lower_hull_facets(f, table.s_min));
  }
  std::vector<double> g(table.num_u());
  for (int s = table.s_min; s <= table.s_max; ++s) {
    for (int u = 0; u <= table.u_max; ++u) g[u] = table.value(gp, s, u);
    set.over_u.push_back(lower_hull_facets(g, 0));
  }
  return set;
}

std::vector<Facet> blended_facets_over_s(const ValueTable& table, double theta,
                                         std::size_t gp, int u, int s_lo,
                                         int s_hi) {
  std::vector<double> f(s_hi - s_lo + 1);
  for (int s = s_lo; s <= s_hi; ++s) f[s - s_lo] = table.blended(theta, gp, s, u);
  return lower_hull_facets(f, s_lo);
}

std::vector<Facet> blended_facets_over_u(const ValueTable& table, double theta,
                                         std::size_t gp, int s) {
  std::vector<double> g(table.num_u());
  for (int u = 0; u <= table.u_max; ++u) g[u] = table.blended(theta, gp, s, u);
  return lower_hull_facets(g, 0);
}

double bound_gap_rho(const Instance& instance, int l, int s, int u) {
  const ModulationModel& model = instance.model;
  const int M = model.num_outcomes();
  std::vector<double> spread(M);
  for (int n = 0; n < M; ++n) {
    double hi = 0.0, lo = 1.0;
    for (int j = 0; j < model.num_states(); ++j) {
      hi = std::max(hi, model.demand_pmf[l][j][n]);
      lo = std::min(lo, model.demand_pmf[l][j][n]);
    }
    spread[n] = hi - lo;
  }
  const double b = instance.backorder_cost[l];
  const double h = instance.holding_cost[l];
  double rho = 0.0;
  for (int y : {s, s + instance.capacity(l, u)}) {
    double total = 0.0;
    for (int n = 0; n < M; ++n)
      total += spread[n] * period_cost(b, h, y, model.outcomes[n]);
    rho = std::max(rho, total);
  }
  return rho / (1.0 - instance.beta);
}

}  // namespace mobiprod

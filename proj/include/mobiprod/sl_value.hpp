#pragma once

// Single-location value tables under the static-belief approximation.
//
// For a fixed belief x and module count u the table solves
//   v(s) = min_{s <= y <= s+C} { L(y) + beta * sum_n p_n v(y - d_n) },
// C = U + uG, where p is the one-step-ahead predictive pmf at x (mixed by
// xP) and L(y) = sum_n p_n c(y, d_n), c(y, d) = h (y-d)^+ + b (d-y)^+.
//
// Inventory is truncated to [s_min, s_max]. Arguments beyond either end are
// extended linearly with slope Lip_k = max(b,h) * sum_{i<k} beta^i, the
// Lipschitz constant of the k-th iterate, which keeps every iterate convex
// and nonincreasing in capacity. A per-state bound on the truncation error is
// propagated alongside the values.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mobiprod/instance.hpp"
#include "mobiprod/modulation.hpp"

namespace mobiprod {

class ValueTable;

struct SlValueOptions {
  std::optional<int> s_min;
  std::optional<int> s_max;
  // Sup-norm stopping tolerance; defaults to 1e-6 (1-beta) / (2 beta).
  std::optional<double> epsilon;
  int max_iters = 5000;
  // When set, apply the operator exactly this many times from v_0 = 0.
  std::optional<int> horizon;
  // Called after every iteration with the iterate count and current table.
  std::function<void(int, const ValueTable&)> on_iterate;
};

class ValueTable {
 public:
  int location = 0;
  BeliefGrid grid;
  int s_min = 0;
  int s_max = 0;
  int u_max = 0;  // Y'_l
  int iterations = 0;
  double residual = 0.0;
  double extension_slope = 0.0;

  int num_s() const { return s_max - s_min + 1; }
  int num_u() const { return u_max + 1; }
  bool in_range(int s) const { return s >= s_min && s <= s_max; }

  // Table value; s outside [s_min, s_max] uses the linear extension.
  double value(std::size_t gp, int s, int u) const;
  // Bound on |table - untruncated iterate| at (gp, s, u).
  double truncation_bound(std::size_t gp, int s, int u) const;
  int base_stock(std::size_t gp, int u) const {
    return base_stock_[gp * num_u() + u];
  }
  // (1-theta) v(gp, s, Y') + theta v(gp, s, u).
  double blended(double theta, std::size_t gp, int s, int u) const;

  // Raw storage, indexed [(gp * num_u + u) * num_s + (s - s_min)].
  std::vector<double>& raw_values() { return values_; }
  const std::vector<double>& raw_values() const { return values_; }
  std::vector<double>& raw_bounds() { return bounds_; }
  const std::vector<double>& raw_bounds() const { return bounds_; }
  std::vector<int>& raw_base_stock() { return base_stock_; }
  const std::vector<int>& raw_base_stock() const { return base_stock_; }

  void allocate();

 private:
  std::size_t index(std::size_t gp, int u, int s) const {
    return (gp * num_u() + u) * num_s() + (s - s_min);
  }

  std::vector<double> values_;
  std::vector<double> bounds_;
  std::vector<int> base_stock_;
};

// Default inventory truncation for location l: +-m (G Y'_l + U_l + d_max).
std::pair<int, int> default_s_range(const Instance& instance, int l);

double default_epsilon(double beta);

ValueTable static_value_iteration(const Instance& instance, int l,
                                  const BeliefGrid& grid,
                                  const SlValueOptions& options = {});

double blended_value(const ValueTable& table, double theta, std::size_t gp,
                     int s, int u);

// c(y, d) for location l.
double period_cost(double backorder, double holding, int y, int d);
// sum_n pmf_n c(y, outcomes_n).
double expected_period_cost(std::span<const double> pmf,
                            std::span<const int> outcomes, double backorder,
                            double holding, int y);

// Smallest outcome whose predictive CDF reaches b / (b + h).
int newsvendor_level(std::span<const double> pmf, std::span<const int> outcomes,
                     double backorder, double holding);
int myopic_base_stock(const Instance& instance, int l, const Belief& x);

struct Facet {
  double slope = 0.0;
  double intercept = 0.0;
  double operator()(double arg) const { return slope * arg + intercept; }
};

// Facets of the lower convex hull of points (x0 + i, f[i]). Throws
// NonConvexTable when max over facets misses any point by more than 1e-6.
std::vector<Facet> lower_hull_facets(std::span<const double> f, int x0);

double evaluate_facets(std::span<const Facet> facets, double arg);

struct FacetSet {
  // over_s[u]: facets of s -> v(gp, s, u) on [s_min, s_max].
  std::vector<std::vector<Facet>> over_s;
  // over_u[s - s_min]: facets of u -> v(gp, s, u) on [0, Y'].
  std::vector<std::vector<Facet>> over_u;
  int s_min = 0;
};

FacetSet extract_facets(const ValueTable& table, std::size_t gp);

// Facets of s -> blended(theta, gp, s, u) on [s_lo, s_hi].
std::vector<Facet> blended_facets_over_s(const ValueTable& table, double theta,
                                         std::size_t gp, int u, int s_lo,
                                         int s_hi);
// Facets of u -> blended(theta, gp, s, u) on [0, Y'].
std::vector<Facet> blended_facets_over_u(const ValueTable& table, double theta,
                                         std::size_t gp, int s);

// rho: max over y in {s, s+C} of sum_d k(d) c(y, d), k(d) the spread of
// Pr(d | state) across states. Returns rho / (1 - beta).
double bound_gap_rho(const Instance& instance, int l, int s, int u);

}  // namespace mobiprod

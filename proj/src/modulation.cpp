#include "mobiprod/modulation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mobiprod/errors.hpp"

namespace mobiprod {

bool Belief::is_valid(double tol) const {
  if (p_.empty()) return false;
  double total = 0.0;
  for (double v : p_) {
    if (!(v >= -tol)) return false;
    total += v;
  }
  return std::abs(total - 1.0) <= tol;
}

Belief Belief::indicator(std::size_t n, std::size_t i) {
  std::vector<double> p(n, 0.0);
  p.at(i) = 1.0;
  return Belief(std::move(p));
}

Belief Belief::uniform(std::size_t n) {
  return Belief(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

namespace {

void check_pmf(const std::vector<double>& pmf, const std::string& what) {
  double total = 0.0;
  for (double v : pmf) {
    if (!(v >= 0.0)) throw ValidationError(what + ": negative probability");
    total += v;
  }
  if (std::abs(total - 1.0) > kProbabilityTolerance)
    throw ValidationError(what + ": probabilities sum to " +
                          std::to_string(total));
}

// Weight of (demand, z) under next state j.
double likelihood(const ModulationModel& model,
                  std::span<const int> outcome_index,
                  std::optional<int> aod_symbol, int j) {
  double w = 1.0;
  for (std::size_t l = 0; l < outcome_index.size(); ++l)
    w *= model.demand_pmf[l][j][outcome_index[l]];
  if (aod_symbol && model.has_aod()) w *= model.aod_pmf[j][*aod_symbol];
  return w;
}

}  // namespace

int ModulationModel::max_demand() const {
  return outcomes.empty() ? 0
                          : *std::max_element(outcomes.begin(), outcomes.end());
}

void ModulationModel::validate() const {
  const int n = num_states();
  if (n < 1) throw ValidationError("modulation: no states");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(transition[i].size()) != n)
      throw ValidationError("modulation: transition matrix is not square");
    check_pmf(transition[i], "transition row " + std::to_string(i));
  }
  if (outcomes.empty()) throw ValidationError("modulation: no demand outcomes");
  for (int d : outcomes)
    if (d < 0) throw ValidationError("modulation: negative demand outcome");
  if (demand_pmf.empty()) throw ValidationError("modulation: no locations");
  for (std::size_t l = 0; l < demand_pmf.size(); ++l) {
    if (static_cast<int>(demand_pmf[l].size()) != n)
      throw ValidationError("modulation: demand pmf state count mismatch");
    for (int j = 0; j < n; ++j) {
      if (demand_pmf[l][j].size() != outcomes.size())
        throw ValidationError("modulation: demand pmf outcome count mismatch");
      check_pmf(demand_pmf[l][j], "demand pmf l=" + std::to_string(l) +
                                      " j=" + std::to_string(j));
    }
  }
  if (has_aod()) {
    if (static_cast<int>(aod_pmf.size()) != n)
      throw ValidationError("modulation: AOD pmf state count mismatch");
    for (int j = 0; j < n; ++j) {
      if (aod_pmf[j].size() != aod_pmf.front().size())
        throw ValidationError("modulation: ragged AOD pmf");
      check_pmf(aod_pmf[j], "AOD pmf j=" + std::to_string(j));
    }
  }
}

StationaryResult stationary_distribution(const ModulationModel& model) {
  const int n = model.num_states();
  // Balance equations (P^T - I) pi = 0 stacked with the normalization row.
  Eigen::MatrixXd a(n + 1, n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a(i, j) = model.transition[j][i] - (i == j ? 1.0 : 0.0);
  a.row(n).setOnes();
  rhs(n) = 1.0;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  lu.setThreshold(1e-12);
  Eigen::VectorXd pi = lu.solve(rhs);
  if (!((a * pi - rhs).lpNorm<Eigen::Infinity>() <= 1e-10))
    throw NoStationaryDistribution("stationary system is inconsistent");

  std::vector<double> p(pi.data(), pi.data() + n);
  for (double& v : p)
    if (v < 0.0 && v > -1e-12) v = 0.0;
  Belief belief(std::move(p));
  if (!belief.is_valid(1e-10))
    throw NoStationaryDistribution(
        "linear solve returned a non-distribution solution");
  return {belief, lu.rank() == n};
}

Belief propagate(const ModulationModel& model, const Belief& x) {
  const int n = model.num_states();
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    if (x[i] == 0.0) continue;
    for (int j = 0; j < n; ++j) out[j] += x[i] * model.transition[i][j];
  }
  return Belief(std::move(out));
}

double sigma(const ModulationModel& model, std::span<const int> outcome_index,
             std::optional<int> aod_symbol, const Belief& x) {
  const Belief next = propagate(model, x);
  double total = 0.0;
  for (int j = 0; j < model.num_states(); ++j)
    total += next[j] * likelihood(model, outcome_index, aod_symbol, j);
  return total;
}

Belief posterior(const ModulationModel& model,
                 std::span<const int> outcome_index,
                 std::optional<int> aod_symbol, const Belief& x) {
  const Belief next = propagate(model, x);
  std::vector<double> out(model.num_states());
  double total = 0.0;
  for (int j = 0; j < model.num_states(); ++j) {
    out[j] = next[j] * likelihood(model, outcome_index, aod_symbol, j);
    total += out[j];
  }
  if (!(total > 0.0)) throw ZeroLikelihood("observation has zero likelihood");
  for (double& v : out) v /= total;
  return Belief(std::move(out));
}

Belief local_posterior(const ModulationModel& model, int location,
                       int outcome_index, const Belief& x) {
  const Belief next = propagate(model, x);
  std::vector<double> out(model.num_states());
  double total = 0.0;
  for (int j = 0; j < model.num_states(); ++j) {
    out[j] = next[j] * model.demand_pmf[location][j][outcome_index];
    total += out[j];
  }
  if (!(total > 0.0)) throw ZeroLikelihood("local observation has zero likelihood");
  for (double& v : out) v /= total;
  return Belief(std::move(out));
}

std::vector<double> predictive_pmf(const ModulationModel& model, int location,
                                   const Belief& x) {
  const Belief next = propagate(model, x);
  std::vector<double> pmf(model.num_outcomes(), 0.0);
  for (int j = 0; j < model.num_states(); ++j) {
    if (next[j] == 0.0) continue;
    const auto& row = model.demand_pmf[location][j];
    for (int n = 0; n < model.num_outcomes(); ++n) pmf[n] += next[j] * row[n];
  }
  return pmf;
}

double expected_demand(const ModulationModel& model, int location,
                       const Belief& x) {
  const auto pmf = predictive_pmf(model, location, x);
  double mean = 0.0;
  for (int n = 0; n < model.num_outcomes(); ++n)
    mean += pmf[n] * model.outcomes[n];
  return mean;
}

namespace {

void compose(int remaining, int parts, std::vector<int>& prefix,
             std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    prefix.push_back(remaining);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int a = 0; a <= remaining; ++a) {
    prefix.push_back(a);
    compose(remaining - a, parts - 1, prefix, out);
    prefix.pop_back();
  }
}

bool same_point(const Belief& a, const Belief& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

}  // namespace

BeliefGrid belief_grid(int num_states, int divisions,
                       const std::optional<Belief>& stationary) {
  if (num_states < 1 || divisions < 1)
    throw ValidationError("belief_grid: need num_states >= 1, divisions >= 1");
  BeliefGrid grid;
  grid.divisions = divisions;
  std::vector<std::vector<int>> parts;
  std::vector<int> prefix;
  compose(divisions, num_states, prefix, parts);
  for (const auto& c : parts) {
    std::vector<double> p(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
      p[i] = static_cast<double>(c[i]) / divisions;
    grid.points.emplace_back(std::move(p));
  }
  if (stationary && !find_grid_index(grid, *stationary))
    grid.points.push_back(*stationary);
  return grid;
}

std::optional<std::size_t> find_grid_index(const BeliefGrid& grid,
                                           const Belief& x) {
  for (std::size_t g = 0; g < grid.size(); ++g)
    if (same_point(grid[g], x, 1e-9)) return g;
  return std::nullopt;
}

std::size_t nearest_grid_index(const BeliefGrid& grid, const Belief& x) {
  if (grid.points.empty()) throw ValidationError("nearest_grid_index: empty grid");
  std::size_t best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < grid.size(); ++g) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double diff = grid[g][i] - x[i];
      d2 += diff * diff;
    }
    // Rounding in the lattice coordinates must not decide exact ties.
    if (d2 < best_d2 - 1e-12) {
      best_d2 = d2;
      best = g;
    }
  }
  return best;
}

const Belief& nearest_grid_point(const BeliefGrid& grid, const Belief& x) {
  return grid[nearest_grid_index(grid, x)];
}

}  // namespace mobiprod

#pragma once

// Modulation chain, demand/observation likelihoods and belief algebra.
//
// Timing convention: a belief x describes the modulation state mu(t); the
// demand realized over (t, t+1) is drawn from the conditional pmf of the
// *next* state mu(t+1) ~ row mu(t) of P. Every predictive quantity therefore
// mixes the conditional pmfs with weights xP.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace mobiprod {

using Matrix = std::vector<std::vector<double>>;

inline constexpr double kProbabilityTolerance = 1e-12;

class Belief {
 public:
  Belief() = default;
  explicit Belief(std::vector<double> probabilities)
      : p_(std::move(probabilities)) {}

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  const std::vector<double>& values() const { return p_; }

  // Nonnegative entries summing to one within `tol`.
  bool is_valid(double tol = kProbabilityTolerance) const;

  static Belief indicator(std::size_t n, std::size_t i);
  static Belief uniform(std::size_t n);

 private:
  std::vector<double> p_;
};

struct ModulationModel {
  // N x N row-stochastic transition matrix of the modulation chain.
  Matrix transition;
  // Demand support d^1..d^M (nonnegative integers), shared by all locations.
  std::vector<int> outcomes;
  // demand_pmf[l][j][n] = Pr(d_l = outcomes[n] | next modulation state j).
  std::vector<Matrix> demand_pmf;
  // aod_pmf[j][z] = Pr(z | next state j). Empty when there is no AOD channel.
  Matrix aod_pmf;

  int num_states() const { return static_cast<int>(transition.size()); }
  int num_outcomes() const { return static_cast<int>(outcomes.size()); }
  int num_locations() const { return static_cast<int>(demand_pmf.size()); }
  int num_aod_symbols() const {
    return aod_pmf.empty() ? 0 : static_cast<int>(aod_pmf.front().size());
  }
  bool has_aod() const { return !aod_pmf.empty(); }
  int max_demand() const;

  // Throws ValidationError when any invariant is broken.
  void validate() const;
};

struct StationaryResult {
  Belief pi;
  // False when pi P = pi has more than one solution on the simplex; `pi` is
  // then the particular solution found by the normalized linear solve.
  bool unique = true;
};

StationaryResult stationary_distribution(const ModulationModel& model);

// x P.
Belief propagate(const ModulationModel& model, const Belief& x);

// Pr(demand vector, z | x) under the product-form demand model.
// `outcome_index[l]` indexes model.outcomes for location l.
double sigma(const ModulationModel& model, std::span<const int> outcome_index,
             std::optional<int> aod_symbol, const Belief& x);

// Bayes update lambda(d, z, x) = x P(d, z) / sigma(d, z, x).
Belief posterior(const ModulationModel& model,
                 std::span<const int> outcome_index,
                 std::optional<int> aod_symbol, const Belief& x);

// Posterior from location l's demand alone.
Belief local_posterior(const ModulationModel& model, int location,
                       int outcome_index, const Belief& x);

// One-step-ahead marginal pmf of location l's demand: sum_j (xP)_j O^l_{.j}.
std::vector<double> predictive_pmf(const ModulationModel& model, int location,
                                   const Belief& x);

double expected_demand(const ModulationModel& model, int location,
                       const Belief& x);

struct BeliefGrid {
  std::vector<Belief> points;
  int divisions = 3;  // lattice step is 1/divisions

  std::size_t size() const { return points.size(); }
  const Belief& operator[](std::size_t i) const { return points[i]; }
};

// Lattice compositions of 1 into `num_states` parts with step 1/divisions, in
// lexicographic order of the first component, then the second, ...; the
// stationary point is appended when supplied and not already present.
BeliefGrid belief_grid(int num_states, int divisions,
                       const std::optional<Belief>& stationary = std::nullopt);

// Euclidean nearest grid point; ties go to the earlier point.
std::size_t nearest_grid_index(const BeliefGrid& grid, const Belief& x);
const Belief& nearest_grid_point(const BeliefGrid& grid, const Belief& x);

// Index of `x` in the grid (componentwise within 1e-9), if present.
std::optional<std::size_t> find_grid_index(const BeliefGrid& grid,
                                           const Belief& x);

}  // namespace mobiprod

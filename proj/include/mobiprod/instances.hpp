#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mobiprod/instance.hpp"

namespace mobiprod {

// Birth-death chain with staying probability phi on N in {2, 3, 4} states.
Matrix build_chain(int num_states, double phi);

// Mean-demand interval [lo, hi) assigned to modulation state j (the last
// interval is closed at 2G).
struct MeanInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool closed_above = false;
  bool contains(double mean) const {
    return mean >= lo && (closed_above ? mean <= hi : mean < hi);
  }
};
std::vector<MeanInterval> mean_intervals(int num_states, int module_size);

inline constexpr int kDirichletBudget = 100000;

// result[l][j][n] = Pr(d_l = n | state j) over outcomes {0, ..., 2G}, drawn
// from a symmetric Dirichlet(1) and rejected until the mean of state j lies
// in interval j.
std::vector<Matrix> gen_demand_dists(int num_states, int module_size,
                                     int num_locations, std::uint64_t seed);

// One generated instance: Y = ceil(4L/3), M = 2G+1, b = 2, h = 1,
// K^{S+} = K^{S-} = K^S / 2, U = 0, Y' = Y.
struct GeneratedSpec {
  std::string set_id = "X";
  int num_locations = 5;
  int module_size = 1;
  int num_states = 2;
  double phi = 0.95;
  double transship_cost = 0.0;
  double module_move_cost = 0.0;
  double prohibitive_cost = 1000.0;
  double beta = 0.95;
  int horizon = 30;
  std::uint64_t demand_seed = 0;
};
Instance generate_instance(const GeneratedSpec& spec);

int modules_for_locations(int num_locations);  // ceil(4L/3)

std::vector<Instance> gen_set_A(std::uint64_t master_seed);
std::vector<Instance> gen_set_B(std::uint64_t master_seed);

}  // namespace mobiprod

#pragma once
// Exact finite-horizon value of the joint multi-location problem by full
// enumeration of actions and demand/AOD outcomes. Beliefs after each update
// are snapped to the nearest grid point. Intended for tiny test instances.
#include <cstddef>
#include <vector>

#include "mobiprod/instance.hpp"
#include "mobiprod/modulation.hpp"

namespace mobiprod {

struct JointOracleOptions {
  int horizon = 3;
  // Reported inventory box, the same at every location.
  int s_lo = -2;
  int s_hi = 2;
  // Limit on (grid points x module configurations x inventory vectors) at
  // the widest level of the recursion.
  std::size_t max_states = 1000000;
};

// All u with sum Y and 0 <= u_l <= Y'_l, in lexicographic order.
std::vector<std::vector<int>> module_configurations(const Instance& instance);

class JointValueTable {
 public:
  BeliefGrid grid;
  int horizon = 0;
  int s_lo = 0;
  int s_hi = 0;
  int num_locations = 0;
  std::vector<std::vector<int>> configs;
  std::vector<double> values;  // [(gp * configs + c) * box + inventory index]

  // v_n(grid[gp], s, u); s must lie in the reported box.
  double value(std::size_t gp, const std::vector<int>& s,
               const std::vector<int>& u) const;
};

// Inventory boxes grow per step so every lookup is exact: the lower end by
// d_max, the upper end by the most a location can reach after receiving
// all positive stock and producing at full capacity.
JointValueTable joint_value_oracle(const Instance& instance, const BeliefGrid& grid,
                                   const JointOracleOptions& options = {});

}  // namespace mobiprod

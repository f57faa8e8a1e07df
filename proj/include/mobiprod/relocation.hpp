#pragma once

// Selection programs with one option per location and two coupling sums:
//   min sum_l cost(l, o_l)  s.t.  sum_l dS(l, o_l) = 0, sum_l dM(l, o_l) = 0.

#include <vector>

#include "mobiprod/lp.hpp"

namespace mobiprod {

struct RelocationOption {
  int transship = 0;     // inventory received (negative: sent)
  int module_delta = 0;  // modules received (negative: sent)
  int production = 0;    // production quantity q (0 when not part of the choice)
  double cost = 0.0;

  int moves() const {
    return (transship < 0 ? -transship : transship) +
           (module_delta < 0 ? -module_delta : module_delta);
  }
};

using OptionTable = std::vector<std::vector<RelocationOption>>;

struct RelocationSelection {
  std::vector<int> choice;  // option index per location
  double cost = 0.0;
};

inline constexpr double kRelocationCostTolerance = 1e-9;

// Exact DP over locations with state (cumulative dS, cumulative dM). Among
// optimal selections (costs within tolerance) prefers the fewest total
// moves, then the lexicographically smallest option indices.
RelocationSelection solve_relocation_dp(const OptionTable& options);

// The same program as a 0/1 MIP, one binary per (location, option).
MipProblem relocation_mip(const OptionTable& options);
RelocationSelection solve_relocation_mip(const OptionTable& options,
                                         const MipOptions& mip_options = {});

// Full cross-product enumeration (test oracle).
RelocationSelection solve_relocation_brute_force(const OptionTable& options);

}  // namespace mobiprod

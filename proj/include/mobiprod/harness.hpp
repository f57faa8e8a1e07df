#pragma once
// Monte Carlo evaluation of policies on an instance.
//
// Period chronology: observe (x, s, u); apply the policy's action (moves,
// then replenishment up to y); the modulation chain steps to mu(t+1); each
// location draws its demand from the pmf of mu(t+1); costs accrue with
// discount beta^t; the belief is updated per mode.
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mobiprod/instance.hpp"
#include "mobiprod/policies.hpp"
#include "mobiprod/tables.hpp"

namespace mobiprod {

// Allocation of Y modules minimizing sum_l v_l(pi, 0, u_l). Ties go to the
// lexicographically largest allocation, which puts remainders first.
std::vector<int> initial_module_config(const Instance& instance,
                                       const TableSet& tables);

struct PeriodCost {
  double holding = 0.0;
  double backorder = 0.0;
  double transship = 0.0;
  double module_move = 0.0;
  double total() const { return holding + backorder + transship + module_move; }
};

// Modulation states mu(0..T) and demands per period; policy independent.
struct SamplePath {
  std::vector<int> states;
  std::vector<std::vector<int>> outcome;  // outcome[t][l], index into outcomes
  std::vector<int> aod;                  // empty without an AOD channel
};

SamplePath sample_path(const Instance& instance, int horizon, std::uint64_t seed);

struct TrajectoryResult {
  double total_discounted = 0.0;
  double total_undiscounted = 0.0;
  std::vector<PeriodCost> periods;  // undiscounted components
  std::vector<Action> actions;
  SamplePath path;
  std::uint64_t seed = 0;
};

// Runs one trajectory from s = 0 and the initial module configuration. Every
// action is validated. Builds tables when `tables` is null.
TrajectoryResult simulate_trajectory(const Instance& instance,
                                     const PolicyConfig& config,
                                     const TableSet* tables, int horizon,
                                     std::uint64_t seed);

// Percent savings of a policy over DNF; nullopt when cost_dnf is zero.
std::optional<double> savings(double cost_policy, double cost_dnf);

// Seed of trajectory r of an instance under a master seed.
std::uint64_t trajectory_seed(std::uint64_t master, const Instance& instance,
                              int trajectory);

struct ReportRow {
  std::string instance_id;
  PolicyId policy = PolicyId::kDNF;
  double theta = 0.2;
  BeliefMode mode = BeliefMode::kPO;
  int trajectories = 0;
  double mean_cost = 0.0;
  double mean_undiscounted = 0.0;
  std::optional<double> savings_vs_dnf;
  double sec_per_trajectory = 0.0;
};

struct ExperimentReport {
  std::vector<ReportRow> rows;
};

struct ExperimentOptions {
  std::vector<PolicyConfig> policies;
  int reps = 50;
  // Periods per trajectory; 0 uses each instance's horizon.
  int horizon = 0;
  std::uint64_t seed = 1;
  bool timing = true;  // false writes zero seconds for byte-stable output
  TableOptions tables;
  std::function<void(const std::string&)> progress;
};

// Evaluates every policy on every instance with common random numbers. A
// DNF baseline is added for each (theta, mode) pair that lacks one.
ExperimentReport run_experiment(const std::vector<Instance>& instances,
                                const ExperimentOptions& options);

// Fills savings_vs_dnf from the DNF row of the same instance, theta and mode
// (falling back to any DNF row of the instance and mode).
void fill_savings(ExperimentReport& report);

// Report CSV with columns instance_id, policy, theta, mode, mean_cost,
// savings_vs_dnf_pct, sec_per_trajectory.
std::string report_csv(const ExperimentReport& report);
// Parses report_csv output (or any CSV with those leading columns).
ExperimentReport parse_report_csv(const std::string& text);

// Per-trajectory CSV written by `simulate`, and its aggregation.
struct TrajectoryRow {
  std::string instance_id;
  PolicyId policy = PolicyId::kDNF;
  double theta = 0.2;
  BeliefMode mode = BeliefMode::kPO;
  int trajectory = 0;
  std::uint64_t seed = 0;
  double discounted_cost = 0.0;
  double undiscounted_cost = 0.0;
  double seconds = 0.0;
};
std::string trajectory_csv(const std::vector<TrajectoryRow>& rows);
std::vector<TrajectoryRow> parse_trajectory_csv(const std::string& text);
ExperimentReport aggregate_trajectories(const std::vector<TrajectoryRow>& rows);

}  // namespace mobiprod

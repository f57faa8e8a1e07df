#pragma once

#include <string>
#include <vector>

#include "mobiprod/instance.hpp"
#include "mobiprod/lp.hpp"
#include "mobiprod/modulation.hpp"
#include "mobiprod/relocation.hpp"
#include "mobiprod/tables.hpp"

namespace mobiprod {

enum class PolicyId { kMP, kMNF, kDNF, kJR, kLAJ, kGLR, kLAGLR };
enum class BeliefMode { kPO, kSS, kCO };

std::string to_string(PolicyId id);
std::string to_string(BeliefMode mode);
PolicyId parse_policy(const std::string& name);   // case-insensitive
BeliefMode parse_mode(const std::string& name);   // po | ss | co

struct PolicyConfig {
  PolicyId id = PolicyId::kDNF;
  double theta = 0.2;
  BeliefMode mode = BeliefMode::kPO;
};

// Throws ValidationError on theta outside [0, 1]; returns warnings (theta is
// ignored by MP and MNF).
std::vector<std::string> validate_config(const PolicyConfig& config);

bool uses_tables(PolicyId id);

struct SystemState {
  Belief x;
  std::vector<int> s;  // inventory, negative = backlog
  std::vector<int> u;  // modules per location
};

struct Action {
  std::vector<int> transship;    // Delta^S_l received
  std::vector<int> modules;      // u'_l after moves
  std::vector<int> order_up_to;  // y_l

  bool operator==(const Action&) const = default;
};

void check_state(const Instance& instance, const SystemState& state);
// Throws ValidationError naming the first violated action invariant.
void check_action(const Instance& instance, const SystemState& state,
                  const Action& action);

// Transshipment and module-move cost of an action.
double movement_cost(const Instance& instance, const SystemState& state,
                     const Action& action);

// Feasible range of Delta^S_l (collapsed to 0 when transshipment is
// prohibitive) and of Delta^M_l (collapsed to 0 when module moves are).
std::pair<int, int> transship_range(const Instance& instance,
                                    const SystemState& state, int l);
std::pair<int, int> module_delta_range(const Instance& instance,
                                       const SystemState& state, int l);

// min{max{s*(x), s'}, s' + U + u'G}, s* the myopic base stock at x.
int local_order_up_to(const Instance& instance, int l, const Belief& x,
                      int s_after, int u_after);

// Context shared by the table-based policies.
struct PolicyInputs {
  const Instance& instance;
  const TableSet& tables;
  double theta = 0.2;
  BeliefMode mode = BeliefMode::kPO;
};

// Expected one-period cost plus discounted blended future cost at location l
// for order-up-to y and post-move modules u', with the future belief taken
// per mode (local posterior or frozen belief) on the table grid.
double jr_location_cost(const PolicyInputs& in, const SystemState& state,
                        int l, int y, int u_after);

// JR objective of a full action (movement costs + per-location terms).
double jr_objective(const PolicyInputs& in, const SystemState& state,
                    const Action& action);

// GLR step-1 objective of (Delta^S, u').
double glr_objective(const PolicyInputs& in, const SystemState& state,
                     const std::vector<int>& transship,
                     const std::vector<int>& modules);

// Per-location options of JR (inner min over q applied) and GLR. DNF uses the
// JR table restricted to zero moves.
OptionTable jr_options(const PolicyInputs& in, const SystemState& state,
                       bool allow_moves = true);
OptionTable glr_options(const PolicyInputs& in, const SystemState& state);

// Integer programs in matrix form (also used for LP-format dumps).
struct PolicyProgram {
  MipProblem problem;
  // Variable indices per location.
  std::vector<int> ship_in, ship_out, modules, move_abs, order_up_to;
  std::vector<int> move_vars;  // ship_in, ship_out and move_abs columns
};
PolicyProgram mp_program(const Instance& instance, const SystemState& state);
PolicyProgram laj_program(const PolicyInputs& in, const SystemState& state);
PolicyProgram laglr_program(const PolicyInputs& in, const SystemState& state);

// Solve stage structure shared by MP / LAJ / LAGLR: optimize, then among
// optima minimize total moves when some movement lever is free. With
// `relax` the first stage is the LP relaxation and must come back integral
// (Prop2Violation otherwise).
struct ProgramResult {
  Solution solution;
  bool relaxed = false;
};
ProgramResult solve_policy_program(const Instance& instance,
                                   const PolicyProgram& program, bool relax);

Action act_mp(const Instance& instance, const SystemState& state);
Action act_mnf(const Instance& instance, const SystemState& state);
Action act_dnf(const PolicyInputs& in, const SystemState& state);
Action act_jr(const PolicyInputs& in, const SystemState& state);
Action act_laj(const PolicyInputs& in, const SystemState& state);
Action act_glr(const PolicyInputs& in, const SystemState& state);
Action act_laglr(const PolicyInputs& in, const SystemState& state);

Action act(const PolicyConfig& config, const Instance& instance,
           const TableSet* tables, const SystemState& state);

}  // namespace mobiprod

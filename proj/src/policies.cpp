#include "mobiprod/policies.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "mobiprod/errors.hpp"
#include "mobiprod/sl_value.hpp"

namespace mobiprod {

namespace {

int pos(int v) { return v > 0 ? v : 0; }

std::string lower_case(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

double ship_cost(const Instance& inst, int l, int delta) {
  return delta > 0 ? inst.transship_in_cost[l] * delta
                   : inst.transship_out_cost[l] * -delta;
}

double module_cost(const Instance& inst, int delta) {
  return inst.module_move_cost * std::abs(delta) / 2.0;
}

// One-step-ahead forecast of a location plus the table grid index of the
// belief that follows each demand outcome.
struct LocalForecast {
  std::vector<double> pmf;
  std::vector<std::size_t> next_gp;
};

LocalForecast forecast(const PolicyInputs& in, const SystemState& state, int l) {
  const ModulationModel& model = in.instance.model;
  LocalForecast f;
  f.pmf = predictive_pmf(model, l, state.x);
  f.next_gp.assign(f.pmf.size(), 0);
  const std::size_t frozen = nearest_grid_index(in.tables.grid, state.x);
  for (int n = 0; n < model.num_outcomes(); ++n) {
    if (f.pmf[n] <= 0.0) continue;
    f.next_gp[n] = in.mode == BeliefMode::kSS
                       ? frozen
                       : nearest_grid_index(in.tables.grid,
                                            local_posterior(model, l, n, state.x));
  }
  return f;
}

double location_cost(const PolicyInputs& in, const LocalForecast& f, int l,
                     int y, int u_after) {
  const Instance& inst = in.instance;
  const ValueTable& table = in.tables.tables[l];
  double total = 0.0;
  for (std::size_t n = 0; n < f.pmf.size(); ++n) {
    const double p = f.pmf[n];
    if (p <= 0.0) continue;
    const int d = inst.model.outcomes[n];
    total += p * (period_cost(inst.backorder_cost[l], inst.holding_cost[l], y, d) +
                  inst.beta * table.blended(in.theta, f.next_gp[n], y - d, u_after));
  }
  return total;
}

bool lever_free(const Instance& inst) {
  if (!inst.transship_disabled())
    for (int l = 0; l < inst.num_locations; ++l)
      if (inst.transship_in_cost[l] + inst.transship_out_cost[l] <= 1e-12)
        return true;
  return !inst.module_moves_disabled() && inst.module_move_cost <= 1e-12;
}

void require_tables(const PolicyInputs& in) {
  if (static_cast<int>(in.tables.tables.size()) != in.instance.num_locations)
    throw ValidationError("policy: value tables missing for some location");
}

}  // namespace

std::string to_string(PolicyId id) {
  switch (id) {
    case PolicyId::kMP: return "MP";
    case PolicyId::kMNF: return "MNF";
    case PolicyId::kDNF: return "DNF";
    case PolicyId::kJR: return "JR";
    case PolicyId::kLAJ: return "LAJ";
    case PolicyId::kGLR: return "GLR";
    case PolicyId::kLAGLR: return "LAGLR";
  }
  return "?";
}

std::string to_string(BeliefMode mode) {
  switch (mode) {
    case BeliefMode::kPO: return "po";
    case BeliefMode::kSS: return "ss";
    case BeliefMode::kCO: return "co";
  }
  return "?";
}

PolicyId parse_policy(const std::string& name) {
  const std::string n = lower_case(name);
  if (n == "mp") return PolicyId::kMP;
  if (n == "mnf") return PolicyId::kMNF;
  if (n == "dnf") return PolicyId::kDNF;
  if (n == "jr") return PolicyId::kJR;
  if (n == "laj") return PolicyId::kLAJ;
  if (n == "glr") return PolicyId::kGLR;
  if (n == "laglr") return PolicyId::kLAGLR;
  throw ValidationError("unknown policy '" + name + "'");
}

BeliefMode parse_mode(const std::string& name) {
  const std::string n = lower_case(name);
  if (n == "po") return BeliefMode::kPO;
  if (n == "ss") return BeliefMode::kSS;
  if (n == "co") return BeliefMode::kCO;
  throw ValidationError("unknown belief mode '" + name + "'");
}

std::vector<std::string> validate_config(const PolicyConfig& config) {
  if (!(config.theta >= 0.0 && config.theta <= 1.0))
    throw ValidationError("theta must lie in [0, 1]");
  std::vector<std::string> warnings;
  if (!uses_tables(config.id))
    warnings.push_back("theta is ignored by " + to_string(config.id));
  return warnings;
}

bool uses_tables(PolicyId id) {
  return id != PolicyId::kMP && id != PolicyId::kMNF;
}

void check_state(const Instance& inst, const SystemState& state) {
  const int L = inst.num_locations;
  if (static_cast<int>(state.s.size()) != L || static_cast<int>(state.u.size()) != L)
    throw ValidationError("state: vector length differs from L");
  if (static_cast<int>(state.x.size()) != inst.model.num_states() ||
      !state.x.is_valid(1e-9))
    throw ValidationError("state: invalid belief");
  int total = 0;
  for (int l = 0; l < L; ++l) {
    if (state.u[l] < 0 || state.u[l] > inst.module_cap[l])
      throw ValidationError("state: module count out of range");
    total += state.u[l];
  }
  if (total != inst.total_modules)
    throw ValidationError("state: module counts do not sum to Y");
}

void check_action(const Instance& inst, const SystemState& state,
                  const Action& a) {
  const int L = inst.num_locations;
  if (static_cast<int>(a.transship.size()) != L ||
      static_cast<int>(a.modules.size()) != L ||
      static_cast<int>(a.order_up_to.size()) != L)
    throw ValidationError("action: vector length differs from L");
  int ship_sum = 0, module_sum = 0, positive = 0;
  for (int l = 0; l < L; ++l) positive += pos(state.s[l]);
  for (int l = 0; l < L; ++l) {
    ship_sum += a.transship[l];
    module_sum += a.modules[l];
    if (a.modules[l] < 0 || a.modules[l] > inst.module_cap[l])
      throw ValidationError("action: u'_" + std::to_string(l) + " out of range");
    if (a.transship[l] < -pos(state.s[l]) ||
        a.transship[l] > positive - pos(state.s[l]))
      throw ValidationError("action: transshipment out of range at " +
                            std::to_string(l));
    const int after = state.s[l] + a.transship[l];
    if (a.order_up_to[l] < after ||
        a.order_up_to[l] > after + inst.capacity(l, a.modules[l]))
      throw ValidationError("action: order-up-to level outside capacity at " +
                            std::to_string(l));
  }
  if (ship_sum != 0) throw ValidationError("action: transshipments do not balance");
  if (module_sum != inst.total_modules)
    throw ValidationError("action: module counts do not sum to Y");
}

double movement_cost(const Instance& inst, const SystemState& state,
                     const Action& a) {
  double total = 0.0;
  for (int l = 0; l < inst.num_locations; ++l)
    total += ship_cost(inst, l, a.transship[l]) +
             module_cost(inst, a.modules[l] - state.u[l]);
  return total;
}

std::pair<int, int> transship_range(const Instance& inst,
                                    const SystemState& state, int l) {
  if (inst.transship_disabled() || inst.num_locations == 1) return {0, 0};
  int others = 0;
  for (int k = 0; k < inst.num_locations; ++k)
    if (k != l) others += pos(state.s[k]);
  return {-pos(state.s[l]), others};
}

std::pair<int, int> module_delta_range(const Instance& inst,
                                       const SystemState& state, int l) {
  if (inst.module_moves_disabled() || inst.num_locations == 1) return {0, 0};
  return {-state.u[l], inst.module_cap[l] - state.u[l]};
}

int local_order_up_to(const Instance& inst, int l, const Belief& x,
                      int s_after, int u_after) {
  const int target = myopic_base_stock(inst, l, x);
  return std::min(std::max(target, s_after), s_after + inst.capacity(l, u_after));
}

double jr_location_cost(const PolicyInputs& in, const SystemState& state,
                        int l, int y, int u_after) {
  require_tables(in);
  return location_cost(in, forecast(in, state, l), l, y, u_after);
}

double jr_objective(const PolicyInputs& in, const SystemState& state,
                    const Action& action) {
  double total = movement_cost(in.instance, state, action);
  for (int l = 0; l < in.instance.num_locations; ++l)
    total += jr_location_cost(in, state, l, action.order_up_to[l],
                              action.modules[l]);
  return total;
}

double glr_objective(const PolicyInputs& in, const SystemState& state,
                     const std::vector<int>& transship,
                     const std::vector<int>& modules) {
  require_tables(in);
  const std::size_t gp = nearest_grid_index(in.tables.grid, state.x);
  double total = 0.0;
  for (int l = 0; l < in.instance.num_locations; ++l)
    total += ship_cost(in.instance, l, transship[l]) +
             module_cost(in.instance, modules[l] - state.u[l]) +
             in.tables.tables[l].blended(in.theta, gp, state.s[l] + transship[l],
                                         modules[l]);
  return total;
}

OptionTable jr_options(const PolicyInputs& in, const SystemState& state,
                       bool allow_moves) {
  require_tables(in);
  const Instance& inst = in.instance;
  OptionTable table(inst.num_locations);
  for (int l = 0; l < inst.num_locations; ++l) {
    const LocalForecast f = forecast(in, state, l);
    auto [slo, shi] = allow_moves ? transship_range(inst, state, l)
                                  : std::pair<int, int>{0, 0};
    auto [mlo, mhi] = allow_moves ? module_delta_range(inst, state, l)
                                  : std::pair<int, int>{0, 0};
    // cost[u'][y - y_lo], filled lazily.
    const int y_lo = state.s[l] + slo;
    const int y_hi = state.s[l] + shi + inst.capacity(l, state.u[l] + mhi);
    std::vector<std::vector<double>> memo(
        inst.module_cap[l] + 1,
        std::vector<double>(y_hi - y_lo + 1, std::numeric_limits<double>::quiet_NaN()));
    auto cost_at = [&](int y, int u_after) {
      double& slot = memo[u_after][y - y_lo];
      if (std::isnan(slot)) slot = location_cost(in, f, l, y, u_after);
      return slot;
    };
    for (int ds = slo; ds <= shi; ++ds) {
      for (int dm = mlo; dm <= mhi; ++dm) {
        const int u_after = state.u[l] + dm;
        const int base = state.s[l] + ds;
        int best_q = 0;
        double best = cost_at(base, u_after);
        for (int q = 1; q <= inst.capacity(l, u_after); ++q) {
          const double c = cost_at(base + q, u_after);
          if (c < best - 1e-12 * std::max(1.0, std::abs(best))) {
            best = c;
            best_q = q;
          }
        }
        table[l].push_back({ds, dm, best_q,
                            ship_cost(inst, l, ds) + module_cost(inst, dm) + best});
      }
    }
  }
  return table;
}

OptionTable glr_options(const PolicyInputs& in, const SystemState& state) {
  require_tables(in);
  const Instance& inst = in.instance;
  const std::size_t gp = nearest_grid_index(in.tables.grid, state.x);
  OptionTable table(inst.num_locations);
  for (int l = 0; l < inst.num_locations; ++l) {
    auto [slo, shi] = transship_range(inst, state, l);
    auto [mlo, mhi] = module_delta_range(inst, state, l);
    for (int ds = slo; ds <= shi; ++ds)
      for (int dm = mlo; dm <= mhi; ++dm)
        table[l].push_back(
            {ds, dm, 0,
             ship_cost(inst, l, ds) + module_cost(inst, dm) +
                 in.tables.tables[l].blended(in.theta, gp, state.s[l] + ds,
                                             state.u[l] + dm)});
  }
  return table;
}

namespace {

// Relocation and capacity columns shared by MP, LAJ and LAGLR. With
// `with_orders` the order-up-to and scenario columns of MP are added.
PolicyProgram base_program(const Instance& inst, const SystemState& state,
                           const Belief& x, bool with_orders) {
  PolicyProgram prog;
  MipProblem& p = prog.problem;
  const int L = inst.num_locations;
  std::vector<Term> balance, module_total;
  for (int l = 0; l < L; ++l) {
    const std::string tag = std::to_string(l);
    auto [slo, shi] = transship_range(inst, state, l);
    auto [mlo, mhi] = module_delta_range(inst, state, l);
    const int in = p.add_var(inst.transship_in_cost[l], 0, shi, true, "ship_in_" + tag);
    const int out =
        p.add_var(inst.transship_out_cost[l], 0, -slo, true, "ship_out_" + tag);
    const int mod = p.add_var(0.0, state.u[l] + mlo, state.u[l] + mhi, true,
                              "modules_" + tag);
    const int dev = p.add_var(inst.module_move_cost / 2.0, 0.0, kInf, false,
                              "move_abs_" + tag);
    p.add_constraint({{dev, 1.0}, {mod, -1.0}}, Sense::kGreaterEqual, -state.u[l],
                     "move_pos_" + tag);
    p.add_constraint({{dev, 1.0}, {mod, 1.0}}, Sense::kGreaterEqual, state.u[l],
                     "move_neg_" + tag);
    prog.ship_in.push_back(in);
    prog.ship_out.push_back(out);
    prog.modules.push_back(mod);
    prog.move_abs.push_back(dev);
    prog.move_vars.insert(prog.move_vars.end(), {in, out, dev});
    balance.push_back({in, 1.0});
    balance.push_back({out, -1.0});
    module_total.push_back({mod, 1.0});
    if (!with_orders) continue;
    const int s = state.s[l];
    const int y = p.add_var(0.0, s + slo,
                            s + shi + inst.capacity(l, inst.module_cap[l]), true,
                            "y_" + tag);
    prog.order_up_to.push_back(y);
    p.add_constraint({{y, 1.0}, {in, -1.0}, {out, 1.0}}, Sense::kGreaterEqual, s,
                     "y_floor_" + tag);
    p.add_constraint({{y, 1.0}, {in, -1.0}, {out, 1.0},
                      {mod, -static_cast<double>(inst.module_size)}},
                     Sense::kLessEqual, s + inst.fixed_capacity[l], "y_cap_" + tag);
    const auto pmf = predictive_pmf(inst.model, l, x);
    for (int n = 0; n < inst.model.num_outcomes(); ++n) {
      if (pmf[n] <= 0.0) continue;
      const int d = inst.model.outcomes[n];
      const std::string sn = tag + "_" + std::to_string(n);
      const int r = p.add_var(pmf[n] * inst.holding_cost[l], 0.0, kInf, false,
                              "held_" + sn);
      const int o = p.add_var(pmf[n] * inst.backorder_cost[l], 0.0, kInf, false,
                              "short_" + sn);
      p.add_constraint({{r, 1.0}, {y, -1.0}}, Sense::kGreaterEqual, -d, "held_" + sn);
      p.add_constraint({{o, 1.0}, {y, 1.0}}, Sense::kGreaterEqual, d, "short_" + sn);
    }
  }
  p.add_constraint(std::move(balance), Sense::kEqual, 0.0, "ship_balance");
  p.add_constraint(std::move(module_total), Sense::kEqual, inst.total_modules,
                   "module_total");
  return prog;
}

// Adds epsilon >= slope * (coef . vars) + intercept for every facet, where
// the facet argument is sum(coef_i * var_i) + shift.
void add_epigraph(MipProblem& p, int epi, const std::vector<Facet>& facets,
                  const std::vector<Term>& arg, double shift,
                  const std::string& name) {
  int k = 0;
  for (const Facet& f : facets) {
    std::vector<Term> terms{{epi, 1.0}};
    for (const Term& t : arg)
      if (f.slope != 0.0) terms.push_back({t.var, -f.slope * t.coef});
    p.add_constraint(std::move(terms), Sense::kGreaterEqual,
                     f.intercept + f.slope * shift,
                     name + "_" + std::to_string(k++));
  }
}

Action program_action(const PolicyProgram& prog, const std::vector<double>& x,
                      int L) {
  Action a;
  for (int l = 0; l < L; ++l) {
    a.transship.push_back(static_cast<int>(
        std::lround(x[prog.ship_in[l]] - x[prog.ship_out[l]])));
    a.modules.push_back(static_cast<int>(std::lround(x[prog.modules[l]])));
    if (!prog.order_up_to.empty())
      a.order_up_to.push_back(static_cast<int>(std::lround(x[prog.order_up_to[l]])));
  }
  return a;
}

Solution solve_stage(const MipProblem& p, bool relax) {
  if (relax) {
    MipProblem lp = p;
    std::fill(lp.integer.begin(), lp.integer.end(), false);
    Solution sol = solve_lp(lp);
    if (sol.status == SolveStatus::kOptimal && is_integral(p, sol.values))
      return sol;
    if (sol.status != SolveStatus::kOptimal) return sol;
  }
  Solution sol = solve_mip(p);
  if (sol.status == SolveStatus::kBudgetExceeded)
    throw BudgetExceeded("policy program: node budget exceeded");
  return sol;
}

}  // namespace

PolicyProgram mp_program(const Instance& instance, const SystemState& state) {
  return base_program(instance, state, state.x, true);
}

PolicyProgram laj_program(const PolicyInputs& in, const SystemState& state) {
  require_tables(in);
  const Instance& inst = in.instance;
  PolicyProgram prog = base_program(inst, state, state.x, true);
  MipProblem& p = prog.problem;
  const std::size_t gp = nearest_grid_index(in.tables.grid, state.x);
  for (int l = 0; l < inst.num_locations; ++l) {
    const std::string tag = std::to_string(l);
    const ValueTable& table = in.tables.tables[l];
    const int y = prog.order_up_to[l];
    const int mean = static_cast<int>(
        std::lround(expected_demand(inst.model, l, state.x)));
    const int zeta = p.add_var(inst.beta / 2.0, -kInf, kInf, false, "zeta_" + tag);
    const int eta = p.add_var(inst.beta / 2.0, -kInf, kInf, false, "eta_" + tag);
    const int a_lo = static_cast<int>(p.lower[y]) - mean;
    const int a_hi = static_cast<int>(p.upper[y]) - mean;
    add_epigraph(p, zeta,
                 blended_facets_over_s(table, in.theta, gp, state.u[l], a_lo, a_hi),
                 {{y, 1.0}}, -mean, "gamma_" + tag);
    add_epigraph(p, eta, blended_facets_over_u(table, in.theta, gp, state.s[l]),
                 {{prog.modules[l], 1.0}}, 0.0, "theta_" + tag);
  }
  return prog;
}

PolicyProgram laglr_program(const PolicyInputs& in, const SystemState& state) {
  require_tables(in);
  const Instance& inst = in.instance;
  PolicyProgram prog = base_program(inst, state, state.x, false);
  MipProblem& p = prog.problem;
  const std::size_t gp = nearest_grid_index(in.tables.grid, state.x);
  for (int l = 0; l < inst.num_locations; ++l) {
    const std::string tag = std::to_string(l);
    const ValueTable& table = in.tables.tables[l];
    auto [slo, shi] = transship_range(inst, state, l);
    const int zeta = p.add_var(0.5, -kInf, kInf, false, "zeta_" + tag);
    const int eta = p.add_var(0.5, -kInf, kInf, false, "eta_" + tag);
    const int s = state.s[l];
    add_epigraph(p, zeta,
                 blended_facets_over_s(table, in.theta, gp, state.u[l], s + slo,
                                       s + shi),
                 {{prog.ship_in[l], 1.0}, {prog.ship_out[l], -1.0}}, s,
                 "gamma_" + tag);
    add_epigraph(p, eta, blended_facets_over_u(table, in.theta, gp, s),
                 {{prog.modules[l], 1.0}}, 0.0, "theta_" + tag);
  }
  return prog;
}

ProgramResult solve_policy_program(const Instance& instance,
                                   const PolicyProgram& program, bool relax) {
  const MipProblem& p = program.problem;
  ProgramResult result;
  result.relaxed = relax;
  if (relax) {
    MipProblem lp = p;
    std::fill(lp.integer.begin(), lp.integer.end(), false);
    result.solution = solve_lp(lp);
    if (result.solution.status != SolveStatus::kOptimal)
      throw InfeasibleProblem(std::string("policy LP: ") +
                              to_string(result.solution.status));
    if (!is_integral(p, result.solution.values))
      throw Prop2Violation("policy LP relaxation returned a fractional vertex");
  } else {
    result.solution = solve_mip(p);
    if (result.solution.status == SolveStatus::kBudgetExceeded)
      throw BudgetExceeded("policy program: node budget exceeded");
    if (result.solution.status != SolveStatus::kOptimal)
      throw InfeasibleProblem(std::string("policy program: ") +
                              to_string(result.solution.status));
  }
  if (!lever_free(instance)) return result;

  // Among optimal actions prefer the fewest moves.
  const double z = result.solution.objective;
  MipProblem tie = p;
  std::vector<Term> obj_terms;
  for (int j = 0; j < p.num_vars(); ++j)
    if (p.objective[j] != 0.0) obj_terms.push_back({j, p.objective[j]});
  tie.add_constraint(std::move(obj_terms), Sense::kLessEqual,
                     z - p.objective_offset + 1e-7 * std::max(1.0, std::abs(z)),
                     "optimal_face");
  std::fill(tie.objective.begin(), tie.objective.end(), 0.0);
  tie.objective_offset = 0.0;
  for (int j : program.move_vars) tie.objective[j] = 1.0;
  // The tie-break is a refinement: on numerical trouble keep stage one.
  Solution refined;
  try {
    refined = solve_stage(tie, relax);
  } catch (const Error&) {
    return result;
  }
  if (refined.status == SolveStatus::kOptimal && p.max_violation(refined.values) <= 1e-6 &&
      is_integral(p, refined.values)) {
    refined.objective = p.evaluate(refined.values);
    result.solution = std::move(refined);
  }
  return result;
}

Action act_mp(const Instance& instance, const SystemState& state) {
  const PolicyProgram prog = mp_program(instance, state);
  const ProgramResult res = solve_policy_program(instance, prog, false);
  return program_action(prog, res.solution.values, instance.num_locations);
}

Action act_mnf(const Instance& instance, const SystemState& state) {
  Action a;
  for (int l = 0; l < instance.num_locations; ++l) {
    a.transship.push_back(0);
    a.modules.push_back(state.u[l]);
    a.order_up_to.push_back(
        local_order_up_to(instance, l, state.x, state.s[l], state.u[l]));
  }
  return a;
}

namespace {

Action selection_action(const OptionTable& options, const RelocationSelection& sel,
                        const SystemState& state) {
  Action a;
  for (std::size_t l = 0; l < options.size(); ++l) {
    const RelocationOption& o = options[l][sel.choice[l]];
    a.transship.push_back(o.transship);
    a.modules.push_back(state.u[l] + o.module_delta);
    a.order_up_to.push_back(state.s[l] + o.transship + o.production);
  }
  return a;
}

}  // namespace

Action act_dnf(const PolicyInputs& in, const SystemState& state) {
  const OptionTable options = jr_options(in, state, false);
  return selection_action(options, solve_relocation_dp(options), state);
}

Action act_jr(const PolicyInputs& in, const SystemState& state) {
  const OptionTable options = jr_options(in, state, true);
  return selection_action(options, solve_relocation_dp(options), state);
}

Action act_laj(const PolicyInputs& in, const SystemState& state) {
  const PolicyProgram prog = laj_program(in, state);
  const ProgramResult res =
      solve_policy_program(in.instance, prog, in.instance.module_size == 1);
  return program_action(prog, res.solution.values, in.instance.num_locations);
}

Action act_glr(const PolicyInputs& in, const SystemState& state) {
  const OptionTable options = glr_options(in, state);
  Action a = selection_action(options, solve_relocation_dp(options), state);
  for (int l = 0; l < in.instance.num_locations; ++l)
    a.order_up_to[l] = local_order_up_to(in.instance, l, state.x,
                                         state.s[l] + a.transship[l], a.modules[l]);
  return a;
}

Action act_laglr(const PolicyInputs& in, const SystemState& state) {
  const PolicyProgram prog = laglr_program(in, state);
  const ProgramResult res = solve_policy_program(in.instance, prog, true);
  Action a = program_action(prog, res.solution.values, in.instance.num_locations);
  for (int l = 0; l < in.instance.num_locations; ++l)
    a.order_up_to.push_back(local_order_up_to(
        in.instance, l, state.x, state.s[l] + a.transship[l], a.modules[l]));
  return a;
}

Action act(const PolicyConfig& config, const Instance& instance,
           const TableSet* tables, const SystemState& state) {
  if (config.id == PolicyId::kMP) return act_mp(instance, state);
  if (config.id == PolicyId::kMNF) return act_mnf(instance, state);
  if (tables == nullptr)
    throw ValidationError(to_string(config.id) + " requires value tables");
  const PolicyInputs in{instance, *tables, config.theta, config.mode};
  switch (config.id) {
    case PolicyId::kDNF: return act_dnf(in, state);
    case PolicyId::kJR: return act_jr(in, state);
    case PolicyId::kLAJ: return act_laj(in, state);
    case PolicyId::kGLR: return act_glr(in, state);
    case PolicyId::kLAGLR: return act_laglr(in, state);
    default: break;
  }
  throw ValidationError("unhandled policy");
}

}  // namespace mobiprod

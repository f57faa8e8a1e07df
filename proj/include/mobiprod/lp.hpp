#pragma once

// Linear and mixed-integer programs in a small dense form, solved by a
// bounded-variable two-phase primal simplex (Bland's rule) and best-first
// branch-and-bound.

#include <cstddef>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace mobiprod {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { kLessEqual, kEqual, kGreaterEqual };

struct Term {
  int var = 0;
  double coef = 0.0;
};

struct Constraint {
  std::vector<Term> terms;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
  std::string name;
};

struct MipProblem {
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<bool> integer;
  std::vector<std::string> names;
  std::vector<Constraint> constraints;
  double objective_offset = 0.0;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int add_var(double cost, double lo, double hi, bool is_integer,
              std::string name = {});
  void add_constraint(std::vector<Term> terms, Sense sense, double rhs,
                      std::string name = {});
  // Throws ValidationError on inconsistent dimensions or unboxed integers.
  void validate() const;
  double evaluate(const std::vector<double>& x) const;
  // Largest constraint or bound violation of x.
  double max_violation(const std::vector<double>& x) const;
};

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kBudgetExceeded };

const char* to_string(SolveStatus status);

struct Solution {
  SolveStatus status = SolveStatus::kInfeasible;
  std::vector<double> values;
  double objective = kInf;
  long nodes = 0;
  double root_bound = -kInf;
  bool has_incumbent() const { return !values.empty(); }
};

struct LpOptions {
  double tolerance = 1e-9;
  long max_pivots = 1000000;
};

Solution solve_lp(const MipProblem& problem, const LpOptions& options = {});

struct MipOptions {
  LpOptions lp;
  double integrality_tolerance = 1e-6;
  long node_budget = 200000;
};

Solution solve_mip(const MipProblem& problem, const MipOptions& options = {});

// True when every integer variable is within tol of an integer.
bool is_integral(const MipProblem& problem, const std::vector<double>& x,
                 double tol = 1e-6);

// Plain-text CPLEX LP format, readable by most external solvers.
void write_lp_format(const MipProblem& problem, std::ostream& out);
std::string to_lp_format(const MipProblem& problem);

}  // namespace mobiprod

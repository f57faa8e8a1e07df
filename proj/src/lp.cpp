#include "mobiprod/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mobiprod/errors.hpp"

namespace mobiprod {

int MipProblem::add_var(double cost, double lo, double hi, bool is_integer,
                        std::string name) {
  objective.push_back(cost);
  lower.push_back(lo);
  upper.push_back(hi);
  integer.push_back(is_integer);
  if (name.empty()) name = "x" + std::to_string(objective.size() - 1);
  names.push_back(std::move(name));
  return num_vars() - 1;
}

void MipProblem::add_constraint(std::vector<Term> terms, Sense sense,
                                double rhs, std::string name) {
  if (name.empty()) name = "c" + std::to_string(constraints.size());
  constraints.push_back({std::move(terms), sense, rhs, std::move(name)});
}

void MipProblem::validate() const {
  const std::size_t n = objective.size();
  if (lower.size() != n || upper.size() != n || integer.size() != n ||
      names.size() != n)
    throw ValidationError("MipProblem: inconsistent variable dimensions");
  for (std::size_t j = 0; j < n; ++j) {
    if (integer[j] && (!std::isfinite(lower[j]) || !std::isfinite(upper[j])))
      throw ValidationError("MipProblem: integer variable " + names[j] +
                            " is not boxed");
    if (!std::isfinite(objective[j]))
      throw ValidationError("MipProblem: non-finite objective coefficient");
  }
  for (const Constraint& c : constraints)
    for (const Term& t : c.terms)
      if (t.var < 0 || t.var >= static_cast<int>(n) || !std::isfinite(t.coef))
        throw ValidationError("MipProblem: bad term in constraint " + c.name);
}

double MipProblem::evaluate(const std::vector<double>& x) const {
  double total = objective_offset;
  for (std::size_t j = 0; j < objective.size(); ++j) total += objective[j] * x[j];
  return total;
}

double MipProblem::max_violation(const std::vector<double>& x) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < objective.size(); ++j) {
    worst = std::max(worst, lower[j] - x[j]);
    worst = std::max(worst, x[j] - upper[j]);
  }
  for (const Constraint& c : constraints) {
    double lhs = 0.0;
    for (const Term& t : c.terms) lhs += t.coef * x[t.var];
    switch (c.sense) {
      case Sense::kLessEqual: worst = std::max(worst, lhs - c.rhs); break;
      case Sense::kGreaterEqual: worst = std::max(worst, c.rhs - lhs); break;
      case Sense::kEqual: worst = std::max(worst, std::abs(lhs - c.rhs)); break;
    }
  }
  return worst;
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kBudgetExceeded: return "budget_exceeded";
  }
  return "unknown";
}

bool is_integral(const MipProblem& problem, const std::vector<double>& x,
                 double tol) {
  for (int j = 0; j < problem.num_vars(); ++j)
    if (problem.integer[j] && std::abs(x[j] - std::round(x[j])) > tol)
      return false;
  return true;
}

namespace {

// How an original variable maps onto nonnegative internal columns.
enum class VarMap { kShift, kReflect, kSplit };

// Smallest tableau entry accepted as a pivot.
constexpr double kPivotTol = 1e-7;
// Largest constraint violation tolerated in a returned solution.
constexpr double kFeasibilityCheck = 1e-6;

class Simplex {
 public:
  Simplex(const MipProblem& p, const LpOptions& opt) : p_(p), tol_(opt.tolerance),
      max_pivots_(opt.max_pivots) {}

  Solution run() {
    Solution sol;
    for (int j = 0; j < p_.num_vars(); ++j) {
      if (p_.lower[j] > p_.upper[j] + tol_) {
        sol.status = SolveStatus::kInfeasible;
        return sol;
      }
    }
    build();
    // Phase 1: minimize the sum of artificials.
    std::vector<double> phase1(ncols_, 0.0);
    for (int j = first_art_; j < ncols_; ++j) phase1[j] = 1.0;
    set_costs(phase1);
    if (!iterate()) throw Error("solve_lp: unbounded phase 1");
    double infeas = 0.0;
    for (int i = 0; i < m_; ++i)
      if (basis_[i] >= first_art_) infeas += xb_[i];
    if (infeas > 1e-7) {
      sol.status = SolveStatus::kInfeasible;
      return sol;
    }
    for (int j = first_art_; j < ncols_; ++j) ub_[j] = 0.0;
    for (int i = 0; i < m_; ++i)
      if (basis_[i] >= first_art_) xb_[i] = 0.0;
    set_costs(cost_);
    if (!iterate()) {
      sol.status = SolveStatus::kUnbounded;
      return sol;
    }
    sol.status = SolveStatus::kOptimal;
    sol.values = extract();
    if (p_.max_violation(sol.values) > kFeasibilityCheck)
      throw Error("solve_lp: basic solution violates constraints");
    sol.objective = p_.evaluate(sol.values);
    sol.nodes = 1;
    sol.root_bound = sol.objective;
    return sol;
  }

 private:
  double& at(int i, int j) { return tab_[static_cast<std::size_t>(i) * ncols_ + j]; }

  void build() {
    const int n = p_.num_vars();
    m_ = static_cast<int>(p_.constraints.size());
    map_.resize(n);
    col_.resize(n);
    std::vector<double> col_ub;
    struct Piece { int var; double sign; };
    std::vector<Piece> pieces;
    for (int j = 0; j < n; ++j) {
      const double lo = p_.lower[j], hi = p_.upper[j];
      col_[j] = static_cast<int>(pieces.size());
      if (std::isfinite(lo)) {
        map_[j] = VarMap::kShift;
        pieces.push_back({j, 1.0});
        col_ub.push_back(std::isfinite(hi) ? std::max(0.0, hi - lo) : kInf);
      } else if (std::isfinite(hi)) {
        map_[j] = VarMap::kReflect;
        pieces.push_back({j, -1.0});
        col_ub.push_back(kInf);
      } else {
        map_[j] = VarMap::kSplit;
        pieces.push_back({j, 1.0});
        pieces.push_back({j, -1.0});
        col_ub.push_back(kInf);
        col_ub.push_back(kInf);
      }
    }
    nstruct_ = static_cast<int>(pieces.size());
    int nslack = 0;
    for (const Constraint& c : p_.constraints)
      if (c.sense != Sense::kEqual) ++nslack;
    first_art_ = nstruct_ + nslack;
    ncols_ = first_art_ + m_;
    tab_.assign(static_cast<std::size_t>(m_) * ncols_, 0.0);
    xb_.assign(m_, 0.0);
    basis_.assign(m_, -1);
    ub_.assign(ncols_, kInf);
    at_upper_.assign(ncols_, false);
    is_basic_.assign(ncols_, false);
    cost_.assign(ncols_, 0.0);
    std::copy(col_ub.begin(), col_ub.end(), ub_.begin());
    for (int k = 0; k < nstruct_; ++k)
      cost_[k] = pieces[k].sign * p_.objective[pieces[k].var];

    int slack = nstruct_;
    for (int i = 0; i < m_; ++i) {
      const Constraint& c = p_.constraints[i];
      double rhs = c.rhs;
      for (const Term& t : c.terms) {
        const int j = t.var;
        const int k = col_[j];
        switch (map_[j]) {
          case VarMap::kShift:
            at(i, k) += t.coef;
            rhs -= t.coef * p_.lower[j];
            break;
          case VarMap::kReflect:
            at(i, k) -= t.coef;
            rhs -= t.coef * p_.upper[j];
            break;
          case VarMap::kSplit:
            at(i, k) += t.coef;
            at(i, k + 1) -= t.coef;
            break;
        }
      }
      int slack_col = -1;
      if (c.sense != Sense::kEqual) {
        slack_col = slack++;
        at(i, slack_col) = c.sense == Sense::kLessEqual ? 1.0 : -1.0;
      }
      if (rhs < 0.0) {
        for (int k = 0; k < first_art_; ++k) at(i, k) = -at(i, k);
        rhs = -rhs;
      }
      at(i, first_art_ + i) = 1.0;
      xb_[i] = rhs;
      if (slack_col >= 0 && at(i, slack_col) > 0.0) {
        // The slack starts basic; the artificial is unused.
        basis_[i] = slack_col;
        ub_[first_art_ + i] = 0.0;
      } else {
        basis_[i] = first_art_ + i;
      }
      is_basic_[basis_[i]] = true;
    }
    // Express the basis columns as unit vectors (slacks already are).
  }

  void set_costs(const std::vector<double>& c) {
    phase_cost_ = c;
    d_ = c;
    for (int i = 0; i < m_; ++i) {
      const double cb = c[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = &tab_[static_cast<std::size_t>(i) * ncols_];
      for (int j = 0; j < ncols_; ++j) d_[j] -= cb * row[j];
    }
  }

  // Returns false when the objective is unbounded below.
  bool iterate() {
    for (;;) {
      if (++pivots_ > max_pivots_) throw Error("solve_lp: pivot limit reached");
      int q = -1;
      for (int j = 0; j < ncols_; ++j) {
        if (is_basic_[j] || ub_[j] <= 0.0) continue;
        if ((!at_upper_[j] && d_[j] < -tol_) || (at_upper_[j] && d_[j] > tol_)) {
          q = j;
          break;
        }
      }
      if (q < 0) return true;
      const double dir = at_upper_[q] ? -1.0 : 1.0;
      double best = ub_[q];
      int r = -1;
      bool leave_to_upper = false;
      for (int i = 0; i < m_; ++i) {
        const double delta = -dir * at(i, q);
        double limit;
        bool to_upper;
        if (delta < -kPivotTol) {
          limit = std::max(0.0, xb_[i]) / -delta;
          to_upper = false;
        } else if (delta > kPivotTol && std::isfinite(ub_[basis_[i]])) {
          limit = std::max(0.0, ub_[basis_[i]] - xb_[i]) / delta;
          to_upper = true;
        } else {
          continue;
        }
        // Near ties go to the larger pivot element, then the lower index.
        const bool tie = r >= 0 && std::abs(limit - best) <= 1e-12;
        const double mag = std::abs(delta), best_mag = r >= 0 ? std::abs(at(r, q)) : 0.0;
        if (limit < best - 1e-12 ||
            (tie && (mag > best_mag * 10.0 ||
                     (mag * 10.0 >= best_mag && basis_[i] < basis_[r])))) {
          best = limit;
          r = i;
          leave_to_upper = to_upper;
        }
      }
      if (!std::isfinite(best)) return false;
      for (int i = 0; i < m_; ++i) xb_[i] += -dir * at(i, q) * best;
      if (r < 0) {
        at_upper_[q] = !at_upper_[q];
        continue;
      }
      const double entering_value = dir > 0 ? best : ub_[q] - best;
      const int leaving = basis_[r];
      is_basic_[leaving] = false;
      at_upper_[leaving] = leave_to_upper;
      basis_[r] = q;
      is_basic_[q] = true;
      at_upper_[q] = false;
      xb_[r] = entering_value;
      pivot(r, q);
    }
  }

  void pivot(int r, int q) {
    double* prow = &tab_[static_cast<std::size_t>(r) * ncols_];
    const double piv = prow[q];
    for (int j = 0; j < ncols_; ++j) prow[j] /= piv;
    prow[q] = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = &tab_[static_cast<std::size_t>(i) * ncols_];
      const double f = row[q];
      if (f == 0.0) continue;
      for (int j = 0; j < ncols_; ++j) row[j] -= f * prow[j];
      row[q] = 0.0;
    }
    const double f = d_[q];
    if (f != 0.0) {
      for (int j = 0; j < ncols_; ++j) d_[j] -= f * prow[j];
      d_[q] = 0.0;
    }
  }

  std::vector<double> extract() const {
    std::vector<double> internal(ncols_, 0.0);
    for (int j = 0; j < ncols_; ++j)
      if (!is_basic_[j] && at_upper_[j]) internal[j] = ub_[j];
    for (int i = 0; i < m_; ++i) internal[basis_[i]] = xb_[i];
    std::vector<double> x(p_.num_vars());
    for (int j = 0; j < p_.num_vars(); ++j) {
      const int k = col_[j];
      switch (map_[j]) {
        case VarMap::kShift: x[j] = p_.lower[j] + internal[k]; break;
        case VarMap::kReflect: x[j] = p_.upper[j] - internal[k]; break;
        case VarMap::kSplit: x[j] = internal[k] - internal[k + 1]; break;
      }
    }
    return x;
  }

  const MipProblem& p_;
  double tol_;
  long max_pivots_;
  long pivots_ = 0;
  int m_ = 0, nstruct_ = 0, first_art_ = 0, ncols_ = 0;
  std::vector<VarMap> map_;
  std::vector<int> col_;
  std::vector<double> tab_, xb_, ub_, cost_, phase_cost_, d_;
  std::vector<int> basis_;
  std::vector<bool> at_upper_, is_basic_;
};

}  // namespace

Solution solve_lp(const MipProblem& problem, const LpOptions& options) {
  problem.validate();
  Simplex simplex(problem, options);
  return simplex.run();
}

}  // namespace mobiprod

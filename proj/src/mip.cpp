#include <cmath>
#include <queue>

#include "mobiprod/errors.hpp"
#include "mobiprod/lp.hpp"

namespace mobiprod {

namespace {

struct Node {
  double bound;
  long order;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> values;
};

struct NodeWorse {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.order > b.order;
  }
};

// Most fractional integer variable, ties to the lowest index; -1 if none.
int branching_variable(const MipProblem& p, const std::vector<double>& x,
                       double tol) {
  int best = -1;
  double best_frac = tol;
  for (int j = 0; j < p.num_vars(); ++j) {
    if (!p.integer[j]) continue;
    const double f = x[j] - std::floor(x[j]);
    const double frac = std::min(f, 1.0 - f);
    if (frac > best_frac + 1e-12) {
      best_frac = frac;
      best = j;
    }
  }
  return best;
}

}  // namespace

Solution solve_mip(const MipProblem& problem, const MipOptions& options) {
  problem.validate();
  MipProblem work = problem;
  for (int j = 0; j < work.num_vars(); ++j) {
    if (!work.integer[j]) continue;
    work.lower[j] = std::ceil(work.lower[j] - options.integrality_tolerance);
    work.upper[j] = std::floor(work.upper[j] + options.integrality_tolerance);
  }

  Solution best;
  best.status = SolveStatus::kInfeasible;
  long nodes = 0;
  long order = 0;
  std::priority_queue<Node, std::vector<Node>, NodeWorse> open;

  auto evaluate = [&](std::vector<double> lo, std::vector<double> hi,
                      bool root) -> bool {
    work.lower = lo;
    work.upper = hi;
    ++nodes;
    Solution lp = solve_lp(work, options.lp);
    if (lp.status == SolveStatus::kUnbounded) {
      if (root) best.status = SolveStatus::kUnbounded;
      return false;
    }
    if (lp.status != SolveStatus::kOptimal) return false;
    if (root) best.root_bound = lp.objective;
    open.push({lp.objective, order++, std::move(lo), std::move(hi),
               std::move(lp.values)});
    return true;
  };

  evaluate(work.lower, work.upper, true);
  if (best.status == SolveStatus::kUnbounded) {
    best.nodes = nodes;
    return best;
  }

  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (best.has_incumbent() &&
        node.bound >= best.objective - 1e-9 * std::max(1.0, std::abs(best.objective)))
      continue;
    const int j =
        branching_variable(problem, node.values, options.integrality_tolerance);
    if (j < 0) {
      std::vector<double> x = node.values;
      for (int k = 0; k < problem.num_vars(); ++k)
        if (problem.integer[k]) x[k] = std::round(x[k]);
      const double obj = problem.evaluate(x);
      if (!best.has_incumbent() || obj < best.objective) {
        best.values = std::move(x);
        best.objective = obj;
        best.status = SolveStatus::kOptimal;
      }
      continue;
    }
    if (nodes >= options.node_budget) {
      best.status = SolveStatus::kBudgetExceeded;
      break;
    }
    const double v = node.values[j];
    std::vector<double> down_hi = node.upper;
    down_hi[j] = std::floor(v);
    std::vector<double> up_lo = node.lower;
    up_lo[j] = std::ceil(v);
    evaluate(node.lower, std::move(down_hi), false);
    evaluate(std::move(up_lo), node.upper, false);
  }
  best.nodes = nodes;
  return best;
}

}  // namespace mobiprod

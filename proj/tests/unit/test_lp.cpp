#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "mobiprod/errors.hpp"
#include "mobiprod/lp.hpp"
#include "mobiprod/rng.hpp"

namespace mobiprod {
namespace {

TEST(Lp, BoxedSingleVariable) {
  MipProblem p;
  p.add_var(1.0, 1.0, 3.0, false, "x");
  const Solution s = solve_lp(p);
  ASSERT_EQ(s.status, SolveStatus::kOptimal);
  EXPECT_NEAR(s.values[0], 1.0, 1e-12);
  EXPECT_NEAR(s.objective, 1.0, 1e-12);
}

TEST(Lp, ContradictoryConstraintsAreInfeasible) {
  MipProblem p;
  const int x = p.add_var(0.0, -kInf, kInf, false);
  p.add_constraint({{x, 1.0}}, Sense::kLessEqual, 0.0);
  p.add_constraint({{x, 1.0}}, Sense::kGreaterEqual, 1.0);
  EXPECT_EQ(solve_lp(p).status, SolveStatus::kInfeasible);
}

TEST(Lp, UnboundedDirection) {
  MipProblem p;
  const int x = p.add_var(-1.0, 0.0, kInf, false);
  const int y = p.add_var(0.0, 0.0, kInf, false);
  p.add_constraint({{x, 1.0}, {y, -1.0}}, Sense::kLessEqual, 1.0);
  EXPECT_EQ(solve_lp(p).status, SolveStatus::kUnbounded);
}

TEST(Lp, FreeAndReflectedVariables) {
  // min x - y with x free, y <= 2, x + y >= 1, x >= -4.
  MipProblem p;
  const int x = p.add_var(1.0, -kInf, kInf, false);
  const int y = p.add_var(-1.0, -kInf, 2.0, false);
  p.add_constraint({{x, 1.0}, {y, 1.0}}, Sense::kGreaterEqual, 1.0);
  p.add_constraint({{x, 1.0}}, Sense::kGreaterEqual, -4.0);
  p.objective_offset = 0.5;
  const Solution s = solve_lp(p);
  ASSERT_EQ(s.status, SolveStatus::kOptimal);
  EXPECT_NEAR(s.values[x], -1.0, 1e-9);
  EXPECT_NEAR(s.values[y], 2.0, 1e-9);
  EXPECT_NEAR(s.objective, -2.5, 1e-9);
}

// Minimum over all basic solutions of {A x <= b, 0 <= x <= ub}.
double vertex_oracle(const std::vector<std::vector<double>>& a,
                     const std::vector<double>& b, const std::vector<double>& c,
                     double ub, bool& feasible) {
  const int n = static_cast<int>(c.size());
  std::vector<std::vector<double>> rows = a;
  std::vector<double> rhs = b;
  for (int j = 0; j < n; ++j) {
    std::vector<double> lo(n, 0.0), hi(n, 0.0);
    lo[j] = -1.0;
    hi[j] = 1.0;
    rows.push_back(lo);
    rhs.push_back(0.0);
    rows.push_back(hi);
    rhs.push_back(ub);
  }
  const int m = static_cast<int>(rows.size());
  double best = std::numeric_limits<double>::infinity();
  feasible = false;
  std::vector<int> pick(n);
  std::function<void(int, int)> rec = [&](int k, int start) {
    if (k == n) {
      Eigen::MatrixXd A(n, n);
      Eigen::VectorXd r(n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) A(i, j) = rows[pick[i]][j];
        r(i) = rhs[pick[i]];
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
      if (lu.rank() < n) return;
      const Eigen::VectorXd x = lu.solve(r);
      for (int i = 0; i < m; ++i) {
        double lhs = 0.0;
        for (int j = 0; j < n; ++j) lhs += rows[i][j] * x(j);
        if (lhs > rhs[i] + 1e-9) return;
      }
      feasible = true;
      double obj = 0.0;
      for (int j = 0; j < n; ++j) obj += c[j] * x(j);
      best = std::min(best, obj);
      return;
    }
    for (int i = start; i < m; ++i) {
      pick[k] = i;
      rec(k + 1, i + 1);
    }
  };
  rec(0, 0);
  return best;
}

TEST(Lp, RandomProgramsMatchVertexEnumeration) {
  Rng rng(2024);
  int feasible_cases = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 5, m = 3;
    std::vector<std::vector<double>> a(m, std::vector<double>(n));
    std::vector<double> b(m), c(n);
    for (auto& row : a)
      for (double& v : row) v = std::round(8.0 * rng.uniform() - 4.0);
    for (double& v : b) v = std::round(10.0 * rng.uniform() - 2.0);
    for (double& v : c) v = 6.0 * rng.uniform() - 3.0;
    MipProblem p;
    for (int j = 0; j < n; ++j) p.add_var(c[j], 0.0, 4.0, false);
    for (int i = 0; i < m; ++i) {
      std::vector<Term> terms;
      for (int j = 0; j < n; ++j) terms.push_back({j, a[i][j]});
      p.add_constraint(terms, Sense::kLessEqual, b[i]);
    }
    bool feasible = false;
    const double oracle = vertex_oracle(a, b, c, 4.0, feasible);
    const Solution s = solve_lp(p);
    if (!feasible) {
      EXPECT_EQ(s.status, SolveStatus::kInfeasible) << "trial " << trial;
      continue;
    }
    ++feasible_cases;
    ASSERT_EQ(s.status, SolveStatus::kOptimal) << "trial " << trial;
    EXPECT_NEAR(s.objective, oracle, 1e-6) << "trial " << trial;
    EXPECT_LE(p.max_violation(s.values), 1e-9);
  }
  EXPECT_GT(feasible_cases, 100);
}

TEST(Lp, BadlyScaledRowsStayFeasible) {
  // Rows mixing large and small coefficients, as produced by epigraph and
  // optimal-face constraints.
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    MipProblem p;
    const int n = 8;
    for (int j = 0; j < n; ++j) p.add_var(rng.uniform() - 0.5, 0.0, 5.0, false);
    for (int i = 0; i < 6; ++i) {
      std::vector<Term> terms;
      double at_center = 0.0;
      for (int j = 0; j < n; ++j) {
        const double mag = rng.uniform() < 0.2 ? 5000.0 : 1.0;
        const double coef = mag * (rng.uniform() - 0.5);
        terms.push_back({j, coef});
        at_center += coef * 1.0;
      }
      p.add_constraint(terms, Sense::kLessEqual, at_center + 1e-7);
    }
    const Solution s = solve_lp(p);
    ASSERT_EQ(s.status, SolveStatus::kOptimal) << "trial " << trial;
    EXPECT_LE(p.max_violation(s.values), 1e-6) << "trial " << trial;
  }
}

TEST(Lp, Deterministic) {
  MipProblem p;
  for (int j = 0; j < 4; ++j) p.add_var(-1.0, 0.0, 1.0, false);
  p.add_constraint({{0, 1}, {1, 1}, {2, 1}, {3, 1}}, Sense::kLessEqual, 2.0);
  const Solution a = solve_lp(p), b = solve_lp(p);
  EXPECT_EQ(a.values, b.values);
}

TEST(Mip, IntegralRelaxationNeedsOneNode) {
  MipProblem p;
  const int x = p.add_var(-1.0, 0.0, 3.0, true);
  const int y = p.add_var(-1.0, 0.0, 3.0, true);
  p.add_constraint({{x, 1.0}, {y, 1.0}}, Sense::kLessEqual, 4.0);
  const Solution lp = solve_lp(p);
  const Solution mip = solve_mip(p);
  ASSERT_EQ(mip.status, SolveStatus::kOptimal);
  EXPECT_EQ(mip.nodes, 1);
  EXPECT_EQ(mip.values, lp.values);
}

TEST(Mip, KnapsackMatchesEnumeration) {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> value(6), weight(6);
    for (int i = 0; i < 6; ++i) {
      value[i] = 1.0 + std::floor(9.0 * rng.uniform());
      weight[i] = 1.0 + std::floor(9.0 * rng.uniform());
    }
    const double cap = 12.0;
    MipProblem p;
    std::vector<Term> row;
    for (int i = 0; i < 6; ++i) {
      p.add_var(-value[i], 0.0, 1.0, true);
      row.push_back({i, weight[i]});
    }
    p.add_constraint(row, Sense::kLessEqual, cap);
    double best = 0.0;
    for (int mask = 0; mask < 64; ++mask) {
      double v = 0.0, w = 0.0;
      for (int i = 0; i < 6; ++i)
        if (mask >> i & 1) v += value[i], w += weight[i];
      if (w <= cap) best = std::max(best, v);
    }
    const Solution s = solve_mip(p);
    ASSERT_EQ(s.status, SolveStatus::kOptimal);
    EXPECT_NEAR(-s.objective, best, 1e-9);
    EXPECT_TRUE(is_integral(p, s.values));
    EXPECT_GE(s.objective, s.root_bound - 1e-7);
  }
}

TEST(Mip, NoIntegerInWindowIsInfeasible) {
  MipProblem p;
  p.add_var(1.0, 0.2, 0.8, true);
  EXPECT_EQ(solve_mip(p).status, SolveStatus::kInfeasible);
}

TEST(Mip, NodeBudget) {
  // Odd-sum parity constraint forces branching.
  MipProblem p;
  std::vector<Term> row;
  for (int i = 0; i < 10; ++i) {
    p.add_var(-1.0, 0.0, 1.0, true);
    row.push_back({i, 2.0});
  }
  p.add_constraint(row, Sense::kLessEqual, 9.0);
  MipOptions opt;
  opt.node_budget = 2;
  const Solution s = solve_mip(p, opt);
  EXPECT_EQ(s.status, SolveStatus::kBudgetExceeded);
  const Solution full = solve_mip(p);
  ASSERT_EQ(full.status, SolveStatus::kOptimal);
  EXPECT_NEAR(full.objective, -4.0, 1e-9);
}

TEST(Mip, UnboxedIntegerRejected) {
  MipProblem p;
  p.add_var(1.0, 0.0, kInf, true);
  EXPECT_THROW(solve_mip(p), ValidationError);
}

TEST(LpFormat, NamesSectionsAndBounds) {
  MipProblem p;
  const int x = p.add_var(2.0, 0.0, 3.0, true, "x");
  const int y = p.add_var(-1.0, -kInf, kInf, false, "y");
  p.add_constraint({{x, 1.0}, {y, -1.0}}, Sense::kGreaterEqual, 1.0, "link");
  const std::string text = to_lp_format(p);
  for (const char* part : {"Minimize", "Subject To", "link:", "Bounds", "y free", "Generals", "End"})
    EXPECT_NE(text.find(part), std::string::npos) << part;
}

}  // namespace
}  // namespace mobiprod

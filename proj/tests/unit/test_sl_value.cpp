#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <vector>

#include "mobiprod/errors.hpp"
#include "mobiprod/instance.hpp"
#include "mobiprod/rng.hpp"
#include "mobiprod/sl_value.hpp"
#include "mobiprod/tables.hpp"
#include "support.hpp"

namespace mobiprod {
namespace {

// One location, one state, demand pmf over {0..M-1}.
Instance single_state(std::vector<double> pmf, int modules, double beta,
                      double b = 2.0, double h = 1.0) {
  ModulationModel m;
  m.transition = {{1.0}};
  for (int d = 0; d < static_cast<int>(pmf.size()); ++d) m.outcomes.push_back(d);
  m.demand_pmf = {{std::move(pmf)}};
  return make_instance(1, modules, 1, b, h, 0.0, 0.0, beta, m);
}

SlValueOptions range(int lo, int hi) {
  SlValueOptions o;
  o.s_min = lo;
  o.s_max = hi;
  return o;
}

TEST(StaticValue, ZeroDemandCostsNothingFromEmptyStock) {
  const Instance inst = single_state({1.0}, 2, 0.9);
  const BeliefGrid grid = belief_grid(1, 3);
  const ValueTable t = static_value_iteration(inst, 0, grid, range(-6, 6));
  for (int u = 0; u <= 2; ++u) {
    EXPECT_EQ(t.base_stock(0, u), 0);
    for (int s = -u; s <= 0; ++s) EXPECT_NEAR(t.value(0, s, u), 0.0, 1e-9);
  }
  // Stock above zero is held forever.
  EXPECT_NEAR(t.value(0, 3, 1), 3.0 / (1.0 - 0.9), 1e-4);
}

TEST(StaticValue, ZeroDiscountIsBestOnePeriodCost) {
  Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const std::vector<double> pmf = testing::random_pmf(rng, 4);
    const Instance inst = single_state(pmf, 2, 0.0);
    const ValueTable t = static_value_iteration(inst, 0, belief_grid(1, 3), range(-8, 8));
    for (int u = 0; u <= 2; ++u)
      for (int s = -5; s <= 5; ++s) {
        double best = std::numeric_limits<double>::infinity();
        for (int y = s; y <= s + u; ++y) {
          double c = 0.0;
          for (int d = 0; d < 4; ++d) c += pmf[d] * period_cost(2.0, 1.0, y, d);
          best = std::min(best, c);
        }
        EXPECT_NEAR(t.value(0, s, u), best, 1e-12) << "s=" << s << " u=" << u;
      }
  }
}

TEST(StaticValue, DeterministicUnitDemandIsReplenishedExactly) {
  const Instance inst = single_state({0.0, 1.0}, 1, 0.9);
  const ValueTable t = static_value_iteration(inst, 0, belief_grid(1, 3), range(-8, 8));
  EXPECT_NEAR(t.value(0, 0, 1), 0.0, 1e-9);
  EXPECT_EQ(t.base_stock(0, 1), 1);
}

TEST(StaticValue, IidCapacityRichBaseStockIsNewsvendorLevel) {
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    Instance inst;
    ModulationModel m = testing::iid_model(rng, 2, 3, 1);
    inst = make_instance(1, 8, 1, 2.0, 1.0, 0.0, 0.0, 0.9, m);
    const BeliefGrid grid = belief_grid(2, 3);
    const ValueTable t = static_value_iteration(inst, 0, grid, range(-20, 20));
    const int level = myopic_base_stock(inst, 0, grid[0]);
    for (std::size_t gp = 0; gp < grid.size(); ++gp) EXPECT_EQ(t.base_stock(gp, 8), level);
  }
}

TEST(StaticValue, FixedHorizonMatchesEnumeratedRecursion) {
  const std::vector<double> pmf{0.3, 0.5, 0.2};
  const Instance inst = single_state(pmf, 1, 0.8);
  SlValueOptions o = range(-30, 30);
  o.horizon = 3;
  const ValueTable t = static_value_iteration(inst, 0, belief_grid(1, 3), o);
  // Independent recursion by memo-free enumeration.
  std::function<double(int, int)> v = [&](int n, int s) -> double {
    if (n == 0) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (int y = s; y <= s + 1; ++y) {
      double c = 0.0;
      for (int d = 0; d < 3; ++d) c += pmf[d] * (period_cost(2.0, 1.0, y, d) + 0.8 * v(n - 1, y - d));
      best = std::min(best, c);
    }
    return best;
  };
  for (int s = -3; s <= 3; ++s) EXPECT_NEAR(t.value(0, s, 1), v(3, s), 1e-12);
}

TEST(StaticValue, StructuralPropertiesOnRandomInstances) {
  Rng rng(99);
  for (int trial = 0; trial < 6; ++trial) {
    const ModulationModel m = testing::random_model(rng, 1 + trial % 3, 2, 1);
    Instance inst = make_instance(1, 3, 1 + trial % 2, 2.0, 1.0, 0.0, 0.0, 0.9, m);
    const BeliefGrid grid = belief_grid(m.num_states(), 3);
    SlValueOptions o = range(-12, 12);
    std::vector<double> previous;
    int monotone_failures = 0;
    o.on_iterate = [&](int, const ValueTable& table) {
      const auto& cur = table.raw_values();
      if (!previous.empty())
        for (std::size_t i = 0; i < cur.size(); ++i)
          if (cur[i] < previous[i] - 1e-9) ++monotone_failures;
      previous = cur;
    };
    const ValueTable t = static_value_iteration(inst, 0, grid, o);
    EXPECT_EQ(monotone_failures, 0);
    for (std::size_t gp = 0; gp < grid.size(); ++gp) {
      for (int u = 0; u <= 3; ++u) {
        for (int s = t.s_min + 1; s < t.s_max; ++s)
          EXPECT_GE(t.value(gp, s - 1, u) - 2 * t.value(gp, s, u) + t.value(gp, s + 1, u), -1e-7);
        if (u > 0) EXPECT_LE(t.base_stock(gp, u), t.base_stock(gp, u - 1));
      }
      for (int s = t.s_min; s <= t.s_max; ++s) {
        for (int u = 0; u < 3; ++u) EXPECT_LE(t.value(gp, s, u + 1), t.value(gp, s, u) + 1e-7);
        for (int u = 1; u < 3; ++u)
          EXPECT_GE(t.value(gp, s, u - 1) - 2 * t.value(gp, s, u) + t.value(gp, s, u + 1), -1e-7);
        for (int u = 0; u <= 3; ++u) EXPECT_GE(t.value(gp, s, u), 0.0);
      }
    }
  }
}

TEST(StaticValue, TruncationBoundCoversWiderTable) {
  Rng rng(12);
  for (int trial = 0; trial < 4; ++trial) {
    const ModulationModel m = testing::random_model(rng, 2, 2, 1);
    const Instance inst = make_instance(1, 2, 1, 2.0, 1.0, 0.0, 0.0, 0.9, m);
    const BeliefGrid grid = belief_grid(2, 3);
    const ValueTable narrow = static_value_iteration(inst, 0, grid, range(-4, 4));
    const ValueTable wide = static_value_iteration(inst, 0, grid, range(-60, 60));
    for (std::size_t gp = 0; gp < grid.size(); ++gp)
      for (int u = 0; u <= 2; ++u)
        for (int s = -4; s <= 4; ++s)
          EXPECT_LE(std::abs(narrow.value(gp, s, u) - wide.value(gp, s, u)),
                    narrow.truncation_bound(gp, s, u) + wide.truncation_bound(gp, s, u) + 1e-5);
  }
}

TEST(StaticValue, NonConvergenceReportsResidual) {
  const Instance inst = single_state({0.5, 0.5}, 1, 0.99);
  SlValueOptions o = range(-10, 10);
  o.max_iters = 3;
  try {
    static_value_iteration(inst, 0, belief_grid(1, 3), o);
    FAIL() << "expected ConvergenceFailure";
  } catch (const ConvergenceFailure& e) {
    EXPECT_GT(e.residual(), 0.0);
  }
}

TEST(Blend, Endpoints) {
  const Instance inst = single_state({0.2, 0.5, 0.3}, 3, 0.9);
  const ValueTable t = static_value_iteration(inst, 0, belief_grid(1, 3), range(-10, 10));
  for (int s = -3; s <= 3; ++s)
    for (int u = 0; u <= 3; ++u) {
      EXPECT_DOUBLE_EQ(blended_value(t, 1.0, 0, s, u), t.value(0, s, u));
      EXPECT_DOUBLE_EQ(blended_value(t, 0.0, 0, s, u), t.value(0, s, 3));
      EXPECT_NEAR(blended_value(t, 0.5, 0, s, u), 0.5 * (t.value(0, s, u) + t.value(0, s, 3)),
                  1e-12);
    }
}

TEST(Newsvendor, Examples) {
  const std::vector<int> outcomes{0, 1, 2};
  const std::vector<double> point{0.0, 0.0, 1.0};
  EXPECT_EQ(newsvendor_level(point, outcomes, 2.0, 1.0), 2);
  const std::vector<double> uniform{1.0 / 3, 1.0 / 3, 1.0 / 3};
  EXPECT_EQ(newsvendor_level(uniform, outcomes, 0.0, 1.0), 0);
  EXPECT_EQ(newsvendor_level(uniform, outcomes, 2.0, 1.0), 1);
  // Brute force over y on the expected one-period cost.
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const std::vector<double> pmf = testing::random_pmf(rng, 3);
    const double b = 0.5 + 3.0 * rng.uniform();
    int best_y = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int y = 0; y <= 2; ++y) {
      const double c = expected_period_cost(pmf, outcomes, b, 1.0, y);
      if (c < best - 1e-12) best = c, best_y = y;
    }
    EXPECT_EQ(newsvendor_level(pmf, outcomes, b, 1.0), best_y);
  }
}

TEST(Facets, AbsoluteValueHasTwo) {
  const std::vector<double> f{3, 2, 1, 0, 1, 2, 3};
  const std::vector<Facet> facets = lower_hull_facets(f, -3);
  ASSERT_EQ(facets.size(), 2u);
  EXPECT_NEAR(facets[0].slope, -1.0, 1e-12);
  EXPECT_NEAR(facets[1].slope, 1.0, 1e-12);
  EXPECT_NEAR(evaluate_facets(facets, 0.0), 0.0, 1e-12);
}

TEST(Facets, AffineHasOne) {
  const std::vector<double> f{1.0, 2.5, 4.0, 5.5};
  const std::vector<Facet> facets = lower_hull_facets(f, 2);
  ASSERT_EQ(facets.size(), 1u);
  EXPECT_NEAR(facets[0].slope, 1.5, 1e-12);
  EXPECT_NEAR(facets[0](2.0), 1.0, 1e-12);
}

TEST(Facets, NonConvexThrows) {
  const std::vector<double> f{0.0, 1.0, 0.0};
  EXPECT_THROW(lower_hull_facets(f, 0), NonConvexTable);
}

TEST(Facets, ReproduceConvergedTables) {
  Rng rng(2);
  const ModulationModel m = testing::random_model(rng, 2, 2, 1);
  const Instance inst = make_instance(1, 3, 1, 2.0, 1.0, 0.0, 0.0, 0.9, m);
  const BeliefGrid grid = belief_grid(2, 3);
  const ValueTable t = static_value_iteration(inst, 0, grid, range(-10, 10));
  for (std::size_t gp = 0; gp < grid.size(); ++gp) {
    const FacetSet fs = extract_facets(t, gp);
    for (int u = 0; u <= 3; ++u)
      for (int s = t.s_min; s <= t.s_max; ++s) {
        EXPECT_NEAR(evaluate_facets(fs.over_s[u], s), t.value(gp, s, u), 1e-6);
        EXPECT_NEAR(evaluate_facets(fs.over_u[s - t.s_min], u), t.value(gp, s, u), 1e-6);
      }
    for (double theta : {0.0, 0.2, 1.0}) {
      const auto bs = blended_facets_over_s(t, theta, gp, 1, -4, 4);
      for (int s = -4; s <= 4; ++s)
        EXPECT_NEAR(evaluate_facets(bs, s), t.blended(theta, gp, s, 1), 1e-6);
      const auto bu = blended_facets_over_u(t, theta, gp, 0);
      for (int u = 0; u <= 3; ++u)
        EXPECT_NEAR(evaluate_facets(bu, u), t.blended(theta, gp, 0, u), 1e-6);
    }
  }
}

TEST(BoundGap, HandExample) {
  ModulationModel m;
  m.transition = {{0.5, 0.5}, {0.5, 0.5}};
  m.outcomes = {0, 1};
  m.demand_pmf = {{{0.9, 0.1}, {0.1, 0.9}}};
  const Instance inst = make_instance(1, 1, 1, 2.0, 1.0, 0.0, 0.0, 0.5, m);
  // k = (0.8, 0.8); y = 0 gives 0.8 * 2, y = 1 gives 0.8 * 1.
  EXPECT_NEAR(bound_gap_rho(inst, 0, 0, 1), 1.6 / 0.5, 1e-12);
}

TEST(BoundGap, VanishesWithoutInformation) {
  Rng rng(6);
  ModulationModel m = testing::random_model(rng, 3, 2, 1);
  for (auto& pmf : m.demand_pmf[0]) pmf = m.demand_pmf[0][0];
  const Instance inst = make_instance(1, 2, 1, 2.0, 1.0, 0.0, 0.0, 0.9, m);
  EXPECT_DOUBLE_EQ(bound_gap_rho(inst, 0, -2, 1), 0.0);
  const Instance one = single_state({0.2, 0.8}, 2, 0.9);
  EXPECT_DOUBLE_EQ(bound_gap_rho(one, 0, 1, 2), 0.0);
}

TEST(TableCache, RoundTripAndKeyMismatch) {
  Rng rng(14);
  const ModulationModel m = testing::random_model(rng, 2, 2, 2);
  Instance inst = make_instance(2, 2, 1, 2.0, 1.0, 0.0, 0.0, 0.9, m);
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "mobiprod_test_cache";
  std::filesystem::remove_all(dir);
  TableOptions opt;
  opt.cache_dir = dir.string();
  const TableSet first = build_tables(inst, opt);
  EXPECT_FALSE(std::filesystem::is_empty(dir));
  const TableSet second = build_tables(inst, opt);
  for (int l = 0; l < 2; ++l) {
    EXPECT_EQ(first.tables[l].raw_values(), second.tables[l].raw_values());
    EXPECT_EQ(first.tables[l].raw_base_stock(), second.tables[l].raw_base_stock());
  }
  const std::string file = (dir / "table.bin").string();
  const std::uint64_t key = table_cache_key(inst, 0, first.grid, opt.value);
  save_table(first.tables[0], key, file);
  ASSERT_TRUE(load_table(file, key).has_value());
  EXPECT_EQ(load_table(file, key)->raw_values(), first.tables[0].raw_values());
  EXPECT_FALSE(load_table(file, key + 1).has_value());
  EXPECT_FALSE(load_table((dir / "missing.bin").string(), key).has_value());
  inst.beta = 0.8;
  EXPECT_NE(table_cache_key(inst, 0, first.grid, opt.value), key);
  std::filesystem::remove_all(dir);
}

TEST(TableCache, MemoSharesTablesAcrossMovementCosts) {
  Rng rng(15);
  const ModulationModel m = testing::random_model(rng, 2, 2, 2);
  const Instance a = make_instance(2, 2, 1, 2.0, 1.0, 0.0, 0.0, 0.9, m);
  const Instance b = make_instance(2, 2, 1, 2.0, 1.0, 3.0, 1.0, 0.9, m);
  TableMemo memo;
  const TableSet ta = build_tables(a, {}, &memo);
  const std::size_t stored = memo.size();
  const TableSet tb = build_tables(b, {}, &memo);
  EXPECT_EQ(memo.size(), stored);
  EXPECT_EQ(ta.tables[1].raw_values(), tb.tables[1].raw_values());
}

}  // namespace
}  // namespace mobiprod

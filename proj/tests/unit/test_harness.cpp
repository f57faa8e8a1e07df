#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "mobiprod/errors.hpp"
#include "mobiprod/harness.hpp"
#include "mobiprod/instance.hpp"
#include "mobiprod/instances.hpp"
#include "mobiprod/rng.hpp"
#include "support.hpp"

namespace mobiprod {
namespace {

Instance random_instance(std::uint64_t seed, int L, int Y, double ks, double km,
                         int num_states = 2) {
  Rng rng(seed);
  Instance inst = make_instance(L, Y, 1, 2.0, 1.0, ks, km, 0.9,
                                testing::random_model(rng, num_states, 2, L));
  inst.prohibitive_cost = 10000.0;
  inst.id = "h" + std::to_string(seed);
  return inst;
}

// Demand is a fixed value d in every state.
Instance constant_demand(int L, int Y, int d, double beta) {
  ModulationModel m;
  m.transition = {{0.5, 0.5}, {0.5, 0.5}};
  for (int k = 0; k <= d; ++k) m.outcomes.push_back(k);
  std::vector<double> pmf(d + 1, 0.0);
  pmf[d] = 1.0;
  m.demand_pmf.assign(L, Matrix{pmf, pmf});
  Instance inst = make_instance(L, Y, 1, 2.0, 1.0, 0.0, 0.0, beta, m);
  inst.id = "const";
  return inst;
}

TEST(InitialConfig, SingleLocationAndNoModules) {
  const Instance one = random_instance(1, 1, 3, 0, 0);
  EXPECT_EQ(initial_module_config(one, build_tables(one)), std::vector<int>{3});
  const Instance none = random_instance(2, 3, 0, 0, 0);
  EXPECT_EQ(initial_module_config(none, build_tables(none)), (std::vector<int>{0, 0, 0}));
}

TEST(InitialConfig, SymmetricLocationsSplitEvenlyRemainderFirst) {
  ModulationModel m;
  m.transition = {{1.0}};
  m.outcomes = {0, 1, 2, 3};
  m.demand_pmf.assign(3, Matrix{{0.1, 0.2, 0.3, 0.4}});
  const Instance inst = make_instance(3, 4, 1, 2.0, 1.0, 0.0, 0.0, 0.9, m);
  const TableSet t = build_tables(inst);
  const std::vector<int> u = initial_module_config(inst, t);
  EXPECT_EQ(u, (std::vector<int>{2, 1, 1}));
  // Enumeration oracle on the same objective.
  double best = 1e300;
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b) {
      const int c = 4 - a - b;
      best = std::min(best, t.tables[0].value(t.pi_index, 0, a) +
                                t.tables[1].value(t.pi_index, 0, b) +
                                t.tables[2].value(t.pi_index, 0, c));
    }
  double got = 0.0;
  for (int l = 0; l < 3; ++l) got += t.tables[l].value(t.pi_index, 0, u[l]);
  EXPECT_NEAR(got, best, 1e-9);
}

TEST(Simulate, ZeroDemandCostsNothing) {
  const Instance inst = constant_demand(2, 2, 0, 0.9);
  const TableSet t = build_tables(inst);
  for (PolicyId id : {PolicyId::kMNF, PolicyId::kDNF, PolicyId::kGLR}) {
    const TrajectoryResult r = simulate_trajectory(inst, {id, 0.2, BeliefMode::kPO}, &t, 8, 3);
    EXPECT_DOUBLE_EQ(r.total_discounted, 0.0) << to_string(id);
  }
}

TEST(Simulate, ZeroDiscountCountsFirstPeriodOnly) {
  Instance inst = random_instance(4, 2, 2, 1.0, 1.0);
  inst.beta = 0.0;
  const TrajectoryResult r =
      simulate_trajectory(inst, {PolicyId::kMP, 0.2, BeliefMode::kPO}, nullptr, 6, 9);
  EXPECT_DOUBLE_EQ(r.total_discounted, r.periods[0].total());
}

TEST(Simulate, DeterministicUnitDemandMnfCostsNothing) {
  const Instance inst = constant_demand(1, 1, 1, 0.5);
  const TrajectoryResult r =
      simulate_trajectory(inst, {PolicyId::kMNF, 0.2, BeliefMode::kPO}, nullptr, 2, 1);
  EXPECT_DOUBLE_EQ(r.total_discounted, 0.0);
  ASSERT_EQ(r.actions.size(), 2u);
  EXPECT_EQ(r.actions[0].order_up_to[0], 1);
  EXPECT_EQ(r.actions[1].order_up_to[0], 1);
}

TEST(Simulate, CostAccountingIdentity) {
  const Instance inst = random_instance(5, 3, 4, 0.5, 0.5);
  const TableSet t = build_tables(inst);
  for (PolicyId id : {PolicyId::kMP, PolicyId::kJR, PolicyId::kLAJ, PolicyId::kLAGLR}) {
    const TrajectoryResult r = simulate_trajectory(inst, {id, 0.2, BeliefMode::kPO}, &t, 10, 7);
    double disc = 0.0, undisc = 0.0, w = 1.0;
    for (const PeriodCost& c : r.periods) {
      EXPECT_GE(c.holding, 0.0);
      EXPECT_GE(c.backorder, 0.0);
      disc += w * c.total();
      undisc += c.total();
      w *= inst.beta;
    }
    EXPECT_NEAR(r.total_discounted, disc, 1e-9);
    EXPECT_NEAR(r.total_undiscounted, undisc, 1e-9);
    // Costs recomputed from the path and actions.
    SystemState st{t.pi, {0, 0, 0}, initial_module_config(inst, t)};
    for (std::size_t k = 0; k < r.actions.size(); ++k) {
      const Action& a = r.actions[k];
      double hb = 0.0;
      for (int l = 0; l < 3; ++l) {
        const int d = inst.model.outcomes[r.path.outcome[k][l]];
        hb += period_cost(2.0, 1.0, a.order_up_to[l], d);
      }
      EXPECT_NEAR(r.periods[k].holding + r.periods[k].backorder, hb, 1e-12);
      EXPECT_NEAR(r.periods[k].transship + r.periods[k].module_move,
                  movement_cost(inst, st, a), 1e-12);
      st.u = a.modules;
    }
  }
}

TEST(Simulate, PathsAreCommonAcrossPolicies) {
  const Instance inst = random_instance(6, 2, 2, 0.0, 0.0);
  const TableSet t = build_tables(inst);
  const TrajectoryResult a =
      simulate_trajectory(inst, {PolicyId::kMP, 0.2, BeliefMode::kPO}, &t, 10, 99);
  const TrajectoryResult b =
      simulate_trajectory(inst, {PolicyId::kGLR, 0.5, BeliefMode::kSS}, &t, 10, 99);
  EXPECT_EQ(a.path.states, b.path.states);
  EXPECT_EQ(a.path.outcome, b.path.outcome);
  EXPECT_EQ(sample_path(inst, 10, 99).outcome, a.path.outcome);
  EXPECT_NE(sample_path(inst, 10, 100).outcome, a.path.outcome);
}

TEST(Simulate, SamplePathFrequenciesFollowTheChain) {
  Instance inst = random_instance(7, 1, 1, 0.0, 0.0);
  inst.model.transition = {{0.9, 0.1}, {0.3, 0.7}};
  const SamplePath p = sample_path(inst, 20000, 5);
  int stay0 = 0, from0 = 0;
  for (std::size_t t = 0; t + 1 < p.states.size(); ++t)
    if (p.states[t] == 0) {
      ++from0;
      stay0 += p.states[t + 1] == 0;
    }
  EXPECT_NEAR(static_cast<double>(stay0) / from0, 0.9, 0.01);
}

TEST(Simulate, SingleStateModesAgree) {
  const Instance inst = random_instance(8, 2, 3, 0.5, 0.5, 1);
  const TableSet t = build_tables(inst);
  for (PolicyId id : {PolicyId::kDNF, PolicyId::kJR, PolicyId::kLAJ, PolicyId::kGLR}) {
    const double po =
        simulate_trajectory(inst, {id, 0.2, BeliefMode::kPO}, &t, 10, 4).total_discounted;
    const double ss =
        simulate_trajectory(inst, {id, 0.2, BeliefMode::kSS}, &t, 10, 4).total_discounted;
    const double co =
        simulate_trajectory(inst, {id, 0.2, BeliefMode::kCO}, &t, 10, 4).total_discounted;
    EXPECT_DOUBLE_EQ(po, ss) << to_string(id);
    EXPECT_DOUBLE_EQ(po, co) << to_string(id);
  }
}

TEST(Simulate, AodChannelIsSampled) {
  Instance inst = random_instance(9, 2, 2, 0.0, 0.0);
  inst.model.aod_pmf = {{0.8, 0.2}, {0.2, 0.8}};
  const TrajectoryResult r =
      simulate_trajectory(inst, {PolicyId::kGLR, 0.2, BeliefMode::kPO}, nullptr, 5, 2);
  EXPECT_EQ(r.path.aod.size(), 5u);
}

TEST(Savings, Examples) {
  EXPECT_DOUBLE_EQ(*savings(10.0, 10.0), 0.0);
  EXPECT_DOUBLE_EQ(*savings(5.0, 10.0), 50.0);
  EXPECT_DOUBLE_EQ(*savings(20.0, 10.0), -100.0);
  EXPECT_FALSE(savings(1.0, 0.0).has_value());
}

TEST(Seeds, DependOnInstanceAndIndex) {
  const Instance a = random_instance(10, 2, 2, 0.0, 0.0);
  const Instance b = random_instance(10, 2, 2, 2.0, 0.0);
  EXPECT_NE(trajectory_seed(1, a, 0), trajectory_seed(1, a, 1));
  EXPECT_NE(trajectory_seed(1, a, 0), trajectory_seed(1, b, 0));
  EXPECT_NE(trajectory_seed(1, a, 0), trajectory_seed(2, a, 0));
  EXPECT_EQ(trajectory_seed(1, a, 3), trajectory_seed(1, a, 3));
}

ExperimentOptions quick(std::vector<PolicyConfig> policies) {
  ExperimentOptions o;
  o.policies = std::move(policies);
  o.reps = 3;
  o.horizon = 4;
  o.seed = 11;
  o.timing = false;
  return o;
}

TEST(Experiment, DnfOnlyGivesOneZeroSavingsRow) {
  const Instance inst = random_instance(11, 2, 2, 0.0, 0.0);
  ExperimentOptions o = quick({{PolicyId::kDNF, 0.2, BeliefMode::kPO}});
  o.reps = 1;
  const ExperimentReport rep = run_experiment({inst}, o);
  ASSERT_EQ(rep.rows.size(), 1u);
  ASSERT_TRUE(rep.rows[0].savings_vs_dnf.has_value());
  EXPECT_DOUBLE_EQ(*rep.rows[0].savings_vs_dnf, 0.0);
}

TEST(Experiment, BaselineAddedAndMatchesTrajectories) {
  const Instance inst = random_instance(12, 2, 2, 0.5, 0.5);
  const ExperimentOptions o = quick({{PolicyId::kGLR, 0.2, BeliefMode::kPO}});
  const ExperimentReport rep = run_experiment({inst}, o);
  ASSERT_EQ(rep.rows.size(), 2u);
  EXPECT_EQ(rep.rows[0].policy, PolicyId::kDNF);
  const TableSet t = build_tables(inst);
  double mean = 0.0;
  for (int r = 0; r < 3; ++r)
    mean += simulate_trajectory(inst, {PolicyId::kGLR, 0.2, BeliefMode::kPO}, &t, 4,
                                trajectory_seed(11, inst, r))
                .total_discounted;
  mean /= 3;
  EXPECT_NEAR(rep.rows[1].mean_cost, mean, 1e-12);
  EXPECT_NEAR(*rep.rows[1].savings_vs_dnf, *savings(rep.rows[1].mean_cost, rep.rows[0].mean_cost),
              1e-12);
}

TEST(Experiment, RepeatedRunsAreByteIdentical) {
  const std::vector<Instance> insts = {random_instance(13, 2, 2, 0.0, 2.0),
                                       random_instance(14, 3, 4, 2.0, 0.0)};
  const ExperimentOptions o = quick({{PolicyId::kMP, 0.2, BeliefMode::kPO},
                                     {PolicyId::kLAJ, 0.2, BeliefMode::kPO},
                                     {PolicyId::kGLR, 0.2, BeliefMode::kSS}});
  EXPECT_EQ(report_csv(run_experiment(insts, o)), report_csv(run_experiment(insts, o)));
}

TEST(Csv, ReportRoundTrip) {
  ExperimentReport rep;
  rep.rows.push_back({"a", PolicyId::kDNF, 0.2, BeliefMode::kPO, 5, 12.5, 14.0, 0.0, 0.0});
  rep.rows.push_back({"a", PolicyId::kLAJ, 0.2, BeliefMode::kPO, 5, 10.0, 11.0, 20.0, 0.25});
  rep.rows.push_back({"b", PolicyId::kMNF, 1.0, BeliefMode::kCO, 5, 0.0, 0.0, std::nullopt, 0.0});
  const std::string text = report_csv(rep);
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "instance_id,policy,theta,mode,mean_cost,savings_vs_dnf_pct,sec_per_trajectory");
  const ExperimentReport back = parse_report_csv(text);
  ASSERT_EQ(back.rows.size(), 3u);
  EXPECT_EQ(back.rows[1].policy, PolicyId::kLAJ);
  EXPECT_DOUBLE_EQ(back.rows[1].mean_cost, 10.0);
  EXPECT_DOUBLE_EQ(*back.rows[1].savings_vs_dnf, 20.0);
  EXPECT_FALSE(back.rows[2].savings_vs_dnf.has_value());
  EXPECT_EQ(back.rows[2].mode, BeliefMode::kCO);
  EXPECT_EQ(report_csv(back), text);
  EXPECT_THROW(parse_report_csv("wrong,header\n"), ValidationError);
}

TEST(Csv, TrajectoryRoundTripAndAggregation) {
  std::vector<TrajectoryRow> rows;
  for (int r = 0; r < 4; ++r) {
    rows.push_back({"x", PolicyId::kDNF, 0.2, BeliefMode::kPO, r, 100u + r, 10.0 + r, 12.0, 0.0});
    rows.push_back({"x", PolicyId::kGLR, 0.2, BeliefMode::kPO, r, 100u + r, 8.0 + r, 9.0, 0.0});
  }
  const std::string text = trajectory_csv(rows);
  const std::vector<TrajectoryRow> back = parse_trajectory_csv(text);
  ASSERT_EQ(back.size(), rows.size());
  EXPECT_EQ(back[3].seed, 101u);
  EXPECT_EQ(trajectory_csv(back), text);
  const ExperimentReport rep = aggregate_trajectories(back);
  ASSERT_EQ(rep.rows.size(), 2u);
  EXPECT_DOUBLE_EQ(rep.rows[0].mean_cost, 11.5);
  EXPECT_DOUBLE_EQ(rep.rows[1].mean_cost, 9.5);
  EXPECT_NEAR(*rep.rows[1].savings_vs_dnf, 100.0 * 2.0 / 11.5, 1e-12);
}

TEST(Savings, FallBackToAnyDnfRowOfTheMode) {
  ExperimentReport rep;
  rep.rows.push_back({"a", PolicyId::kDNF, 0.2, BeliefMode::kPO, 1, 10.0, 10.0, {}, 0.0});
  rep.rows.push_back({"a", PolicyId::kMP, 0.7, BeliefMode::kPO, 1, 9.0, 9.0, {}, 0.0});
  rep.rows.push_back({"a", PolicyId::kMP, 0.7, BeliefMode::kSS, 1, 9.0, 9.0, {}, 0.0});
  fill_savings(rep);
  EXPECT_NEAR(*rep.rows[1].savings_vs_dnf, 10.0, 1e-12);
  EXPECT_FALSE(rep.rows[2].savings_vs_dnf.has_value());
}

}  // namespace
}  // namespace mobiprod

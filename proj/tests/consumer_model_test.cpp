#include "gridqos/consumer_model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gridqos/scenario_bench.hpp"
#include "oracles.hpp"

namespace gridqos {
namespace {

TEST(UtilityModelTest, LogarithmicModelIsIncreasingAndConcave) {
  const UtilityModel u = UtilityModel::logarithmic();
  double previous = std::numeric_limits<double>::infinity();
  for (double x = 0.5; x < 5000.0; x *= 1.3) {
    const double slope = u.marginal(x);
    EXPECT_GT(slope, 0.0);
    EXPECT_LT(slope, previous);
    EXPECT_NEAR(u.consumption_at_price(slope), x, 1e-9 * x);
    previous = slope;
  }
  // U' sweeps (0, inf) across the consumption domain.
  EXPECT_GT(u.marginal(kMinConsumption), 1e11);
  EXPECT_LT(u.marginal(1e12), 1e-8);
}

TEST(OptimalConsumptionTest, InvertsTheMarginalUtility) {
  const UtilityModel u = UtilityModel::logarithmic();
  EXPECT_DOUBLE_EQ(optimal_consumption(u, 20.0), 50.0);
  EXPECT_DOUBLE_EQ(optimal_consumption(u, 10.0), 100.0);
  EXPECT_THROW(optimal_consumption(u, 0.0), std::domain_error);
  EXPECT_THROW(optimal_consumption(u, -3.0), std::domain_error);
}

TEST(OptimalConsumptionTest, DecreasesWithPrice) {
  const UtilityModel sqrt_model([](double x) { return 2.0 * std::sqrt(x); },
                                [](double x) { return 1.0 / std::sqrt(x); },
                                [](double p) { return 1.0 / (p * p); });
  for (const UtilityModel& u : {UtilityModel::logarithmic(), sqrt_model}) {
    double previous = std::numeric_limits<double>::infinity();
    for (double p = 0.1; p < 100.0; p += 0.7) {
      const double x = optimal_consumption(u, p);
      EXPECT_LT(x, previous);
      previous = x;
    }
  }
}

TEST(WelfareGapTest, ZeroWhenPricesAgree) {
  EXPECT_EQ(welfare_gap(UtilityModel::logarithmic(), 17.0, 17.0), 0.0);
}

TEST(WelfareGapTest, ClosedFormValue) {
  // 1000 log(50) - 20*50 - (1000 log(100) - 20*100) = 1000 log(1/2) + 1000.
  EXPECT_NEAR(welfare_gap(UtilityModel::logarithmic(), 20.0, 10.0), 306.85281944005476, 1e-9);
}

TEST(WelfareGapTest, NonnegativeAndZeroOnlyOnTheDiagonal) {
  const UtilityModel u = UtilityModel::logarithmic();
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> price(1.0, 100.0);
  for (int i = 0; i < 1000; ++i) {
    const double p = price(rng), q = price(rng);
    const double gap = welfare_gap(u, p, q);
    EXPECT_GT(gap, 0.0) << p << " " << q;
    EXPECT_NEAR(gap, oracle::log_utility_gap(p, q), 1e-9 * std::max(1.0, gap));
  }
  EXPECT_THROW(welfare_gap(u, 0.0, 1.0), std::domain_error);
  EXPECT_THROW(welfare_gap(u, 1.0, -1.0), std::domain_error);
}

TEST(DelayCostTest, ZeroDelayCostsNothing) {
  const auto d = pjm_bus("D");
  EXPECT_EQ(delay_cost(d, UtilityModel::logarithmic(), 0, 100.0, stationary_load_prior(d)), 0.0);
}

TEST(DelayCostTest, ConstantPriceCostsNothing) {
  const auto c = LoadPriceCurve::constant(25.0);
  for (int d : {1, 5, 50}) {
    EXPECT_EQ(delay_cost(c, UtilityModel::logarithmic(), d, 100.0, stationary_load_prior(c)), 0.0);
  }
}

TEST(DelayCostTest, MatchesMonteCarloForBusD) {
  const auto d = pjm_bus("D");
  const double quad = delay_cost(d, UtilityModel::logarithmic(), 10, 100.0, stationary_load_prior(d));
  const auto mc = oracle::mc_delay_cost(d, 10, 100.0, 1000000, 123);
  EXPECT_LT(std::abs(quad - mc.mean), 0.02 * mc.mean) << "quad=" << quad << " mc=" << mc.mean << " se=" << mc.stderr_;
}

TEST(DelayCostTest, NonnegativeOnTheGrid) {
  const UtilityModel u = UtilityModel::logarithmic();
  for (const auto& bus : pjm_scenario()) {
    for (int d = 0; d <= 50; d += 7) {
      EXPECT_GE(delay_cost(bus.curve, u, d, 31.6, stationary_load_prior(bus.curve)), -1e-6);
    }
  }
  EXPECT_THROW(delay_cost(pjm_bus("A"), u, -1, 100.0, LoadPrior::uniform(1600.0)), std::domain_error);
}

TEST(OutageLossTest, ConstantPriceLosesNothing) {
  const auto c = LoadPriceCurve::constant(25.0);
  EXPECT_EQ(outage_loss_rate(c, UtilityModel::logarithmic(), stationary_load_prior(c)), 0.0);
}

TEST(OutageLossTest, MatchesMonteCarloForBusD) {
  const auto d = pjm_bus("D");
  const double exact = outage_loss_rate(d, UtilityModel::logarithmic(), stationary_load_prior(d));
  const auto mc = oracle::mc_outage_loss(d, 1000000, 321);
  EXPECT_GT(exact, 0.0);
  EXPECT_LT(std::abs(exact - mc.mean), 0.02 * mc.mean);
}

TEST(TabulateCostsTest, SinglePointGrids) {
  const auto d = pjm_bus("D");
  const std::vector<int> delays{0};
  const std::vector<double> zetas{0.0};
  const CostTables t = tabulate_costs(d, UtilityModel::logarithmic(), delays, zetas, 100.0,
                                      stationary_load_prior(d));
  ASSERT_EQ(t.delay.size(), 1u);
  EXPECT_EQ(t.delay[0].param, 0.0);
  EXPECT_EQ(t.delay[0].cost, 0.0);
  EXPECT_EQ(t.outage[0].cost, 0.0);
  EXPECT_EQ(cost_curve_csv(t.delay), "param,cost\n0,0\n");
}

TEST(TabulateCostsTest, ParallelMatchesSequential) {
  const auto b = pjm_bus("B");
  const auto delays = std::vector<int>{1, 2, 3, 5, 8, 13, 21, 34};
  const std::vector<double> zetas{0.01, 0.05, 0.1};
  const auto prior = stationary_load_prior(b);
  const auto u = UtilityModel::logarithmic();
  const CostTables one = tabulate_costs(b, u, delays, zetas, 100.0, prior, 1);
  const CostTables four = tabulate_costs(b, u, delays, zetas, 100.0, prior, 4);
  EXPECT_EQ(cost_curve_csv(one.delay), cost_curve_csv(four.delay));
  EXPECT_EQ(cost_curve_csv(one.outage), cost_curve_csv(four.outage));
}

TEST(TabulateCostsTest, BusEBelowBusD) {
  const auto u = UtilityModel::logarithmic();
  const auto d = pjm_bus("D"), e = pjm_bus("E");
  const auto delays = std::vector<int>{1, 5, 10, 20};
  const std::vector<double> zetas{0.02, 0.1};
  const CostTables td = tabulate_costs(d, u, delays, zetas, 100.0, stationary_load_prior(d));
  const CostTables te = tabulate_costs(e, u, delays, zetas, 100.0, stationary_load_prior(e));
  for (std::size_t i = 0; i < delays.size(); ++i) EXPECT_LT(te.delay[i].cost, td.delay[i].cost);
  for (std::size_t i = 0; i < zetas.size(); ++i) EXPECT_LT(te.outage[i].cost, td.outage[i].cost);
  // Same ordering under the Monte Carlo oracle.
  EXPECT_LT(oracle::mc_delay_cost(e, 10, 100.0, 200000, 1).mean, oracle::mc_delay_cost(d, 10, 100.0, 200000, 1).mean);
}

TEST(CostCurveTest, RejectsUnsortedParameters) {
  EXPECT_THROW(CostCurve({{1.0, 0.0}, {1.0, 0.0}}), std::invalid_argument);
  EXPECT_THROW(CostCurve({{2.0, 0.0}, {1.0, 0.0}}), std::invalid_argument);
  EXPECT_THROW(CostCurve({{1.0, std::nan("")}}), std::invalid_argument);
}

}  // namespace
}  // namespace gridqos

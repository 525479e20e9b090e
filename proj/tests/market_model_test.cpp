#include "gridqos/market_model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gridqos/scenario_bench.hpp"
#include "gridqos/text_format.hpp"
#include "oracles.hpp"

namespace gridqos {
namespace {

TEST(TruncatedGaussianTest, SymmetricAboutTheMean) {
  const TruncatedGaussian dist(800.0, 100.0, 1600.0);
  for (double a : {0.5, 3.0, 10.0, 25.0, 400.0}) {
    EXPECT_DOUBLE_EQ(dist.pdf(800.0 - a), dist.pdf(800.0 + a)) << a;
  }
}

TEST(TruncatedGaussianTest, IntegratesToOne) {
  const TruncatedGaussian dist(800.0, 100.0, 1600.0);
  const double total = oracle::simpson([&](double x) { return dist.pdf(x); }, 0.0, 1600.0, 100000);
  EXPECT_NEAR(total, 1.0, 1e-9);
}

TEST(TruncatedGaussianTest, PeakMatchesHighResolutionNormalizer) {
  const double z = oracle::kernel_integral(800.0, 100.0, 0.0, 1600.0, 100000);
  const TruncatedGaussian dist(800.0, 100.0, 1600.0);
  EXPECT_NEAR(dist.pdf(800.0), 1.0 / z, 1e-12);
  // Truncation is negligible 80 standard deviations out: 1 / sqrt(2 pi 100).
  EXPECT_NEAR(truncated_gaussian_pdf(800.0, dist), 0.03989422804014327, 1e-14);
}

TEST(TruncatedGaussianTest, NormalizationHoldsForRandomParameters) {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> log_var(0.0, 5.0);
  std::uniform_real_distribution<double> dmax(100.0, 3000.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double d_max = dmax(rng);
    const double mean = unit(rng) * d_max;
    const double variance = std::pow(10.0, log_var(rng));
    const TruncatedGaussian dist(mean, variance, d_max);
    const double total = oracle::simpson([&](double x) { return dist.pdf(x); }, 0.0, d_max, 200000);
    ASSERT_NEAR(total, 1.0, 1e-9) << "mean=" << mean << " var=" << variance << " d_max=" << d_max;
  }
}

TEST(TruncatedGaussianTest, CdfMatchesQuadrature) {
  const TruncatedGaussian dist(100.0, 5000.0, 1600.0);
  const double z = oracle::kernel_integral(100.0, 5000.0, 0.0, 1600.0, 100000);
  for (double x : {0.0, 50.0, 100.0, 250.0, 1600.0}) {
    const double expected = x == 0.0 ? 0.0 : oracle::kernel_integral(100.0, 5000.0, 0.0, x, 100000) / z;
    EXPECT_NEAR(dist.cdf(x), expected, 1e-10) << x;
  }
}

TEST(TruncatedGaussianTest, RejectsBadArguments) {
  EXPECT_THROW(TruncatedGaussian(800.0, 0.0, 1600.0), std::domain_error);
  EXPECT_THROW(TruncatedGaussian(800.0, -1.0, 1600.0), std::domain_error);
  const TruncatedGaussian dist(800.0, 100.0, 1600.0);
  EXPECT_THROW(dist.pdf(-0.1), std::domain_error);
  EXPECT_THROW(dist.pdf(1600.1), std::domain_error);
}

TEST(LoadForecastTest, ZeroElapsedTimeIsAPointMass) {
  const LoadForecast f = load_distribution_after(800.0, 0.0, 100.0, 1600.0);
  ASSERT_TRUE(std::holds_alternative<PointMass>(f));
  EXPECT_EQ(std::get<PointMass>(f).load, 800.0);
}

TEST(LoadForecastTest, VarianceGrowsLinearly) {
  const LoadForecast f = load_distribution_after(800.0, 10.0, 100.0, 1600.0);
  ASSERT_TRUE(std::holds_alternative<TruncatedGaussian>(f));
  const auto& g = std::get<TruncatedGaussian>(f);
  EXPECT_EQ(g.mean(), 800.0);
  EXPECT_EQ(g.variance(), 1000.0);
}

TEST(LoadForecastTest, RejectsViolatedPreconditions) {
  EXPECT_THROW(load_distribution_after(800.0, -1.0, 100.0, 1600.0), std::domain_error);
  EXPECT_THROW(load_distribution_after(800.0, 1.0, 0.0, 1600.0), std::domain_error);
  EXPECT_THROW(load_distribution_after(1700.0, 1.0, 100.0, 1600.0), std::domain_error);
}

void expect_matches_monte_carlo(const LoadPriceCurve& curve, double d0, double t, double theta) {
  const PriceDistribution dist = price_distribution_after(curve, d0, t, theta);
  const auto data = oracle::copy_of(curve);
  std::mt19937_64 rng(77);
  constexpr long kDraws = 1000000;
  std::vector<long> counts(curve.size(), 0);
  for (long i = 0; i < kDraws; ++i) {
    ++counts[oracle::level_of(data.breakpoints, oracle::sample_truncated_gaussian(rng, d0, theta * t, data.max_load))];
  }
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double p = dist.probabilities[i];
    const double freq = static_cast<double>(counts[i]) / kDraws;
    const double se = std::sqrt(std::max(p * (1 - p), 1e-12) / kDraws);
    EXPECT_LE(std::abs(freq - p), 3 * se + 1e-12) << "interval " << i << " p=" << p << " freq=" << freq;
  }
}

TEST(PriceDistributionTest, MatchesMonteCarloForBusDAfterTenSlots) {
  expect_matches_monte_carlo(pjm_bus("D"), 800.0, 10.0, 100.0);
}

TEST(PriceDistributionTest, MatchesMonteCarloForBusDAfterFiveSlots) {
  expect_matches_monte_carlo(pjm_bus("D"), 800.0, 5.0, 100.0);
}

TEST(PriceDistributionTest, ZeroElapsedTimeIsUnitMassOnCurrentInterval) {
  const auto curve = pjm_bus("D");
  const PriceDistribution dist = price_distribution_after(curve, 800.0, 0.0, 100.0);
  for (std::size_t i = 0; i < curve.size(); ++i) {
    EXPECT_EQ(dist.probabilities[i], i == 4 ? 1.0 : 0.0);
  }
  EXPECT_EQ(dist.entropy(), 0.0);
}

TEST(PriceDistributionTest, SumsToOne) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> load(0.0, 1600.0);
  std::uniform_real_distribution<double> t(0.0, 200.0);
  for (const auto& bus : pjm_scenario()) {
    for (int i = 0; i < 50; ++i) {
      const auto dist = price_distribution_after(bus.curve, load(rng), t(rng), 100.0);
      double total = 0.0;
      for (double p : dist.probabilities) {
        EXPECT_GE(p, 0.0);
        total += p;
      }
      EXPECT_NEAR(total, 1.0, 1e-9);
    }
  }
}

TEST(PriceDistributionTest, EntropyIsNonDecreasingFromTheSupportCenter) {
  for (const auto& bus : pjm_scenario()) {
    double previous = 0.0;
    for (int t = 0; t <= 400; ++t) {
      const double h = price_distribution_after(bus.curve, 800.0, t, 100.0).entropy();
      EXPECT_GE(h, previous - 1e-12) << bus.bus << " t=" << t;
      previous = h;
    }
  }
}

TEST(LoadPriceCurveTest, TableLookups) {
  EXPECT_EQ(price_of_load(pjm_bus("A"), 650.0), 15.00);
  EXPECT_EQ(price_of_load(pjm_bus("D"), 800.0), 35.00);
  EXPECT_EQ(price_of_load(pjm_bus("E"), 0.0), 10.00);
}

TEST(LoadPriceCurveTest, IntervalsAreLeftClosed) {
  const auto a = pjm_bus("A");
  EXPECT_EQ(a.price_of_load(599.999), 10.0);
  EXPECT_EQ(a.price_of_load(600.0), 14.0);
  EXPECT_EQ(a.price_of_load(1600.0), 16.98);
  EXPECT_THROW(a.price_of_load(-1e-9), std::domain_error);
  EXPECT_THROW(a.price_of_load(1600.001), std::domain_error);
}

TEST(LoadPriceCurveTest, IntervalOfPrice) {
  const auto a = pjm_bus("A");
  EXPECT_EQ(load_interval_of_price(a, 0), (LoadInterval{0.0, 600.0}));
  EXPECT_EQ(load_interval_of_price(a, a.size() - 1), (LoadInterval{1484.06, 1600.0}));
  EXPECT_NEAR(load_interval_of_price(a, 2).width(), 71.81, 1e-12);
  EXPECT_THROW(load_interval_of_price(a, a.size()), std::out_of_range);
}

TEST(LoadPriceCurveTest, LookupAgreesWithIntervals) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const auto& bus : pjm_scenario()) {
    for (std::size_t i = 0; i < bus.curve.size(); ++i) {
      const LoadInterval j = bus.curve.load_interval_of_price(i);
      EXPECT_EQ(bus.curve.price_of_load(j.lo), bus.curve.prices()[i]);
      for (int s = 0; s < 100; ++s) {
        const double x = j.lo + unit(rng) * j.width();
        ASSERT_EQ(bus.curve.price_of_load(x), bus.curve.prices()[i]) << bus.bus << " x=" << x;
      }
    }
  }
}

TEST(LoadPriceCurveTest, RejectsInvalidCurves) {
  EXPECT_THROW(LoadPriceCurve({1.0, 2.0}, {1.0, 1.0}, 10.0), std::invalid_argument);
  EXPECT_THROW(LoadPriceCurve({0.0, 2.0, 2.0}, {1.0, 1.0, 1.0}, 10.0), std::invalid_argument);
  EXPECT_THROW(LoadPriceCurve({0.0, 2.0}, {1.0, 0.0}, 10.0), std::invalid_argument);
  EXPECT_THROW(LoadPriceCurve({0.0, 2.0}, {1.0}, 10.0), std::invalid_argument);
  EXPECT_THROW(LoadPriceCurve({0.0, 2.0}, {1.0, 1.0}, 2.0), std::invalid_argument);
}

TEST(CurveFileTest, RoundTripsTheScenario) {
  for (const auto& bus : pjm_scenario()) {
    EXPECT_EQ(parse_curve(emit_curve(bus.curve)), bus.curve) << bus.bus;
  }
  EXPECT_EQ(emit_curve(pjm_bus("D")),
            "8 1600\n0 10\n600 14\n640 15\n711.81 31.46\n742.8 35\n963.94 35\n1137.02 39.94\n1484.06 39.94\n");
}

TEST(CurveFileTest, ErrorsNameTheLine) {
  auto line_of = [](std::string_view text) {
    try {
      parse_curve(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  EXPECT_EQ(line_of("2\n0 1\n"), 1u);
  EXPECT_EQ(line_of("2 100\n0 1\n50 -2\n"), 3u);
  EXPECT_EQ(line_of("2 100\n0 1\n0 2\n"), 3u);
  EXPECT_EQ(line_of("2 100\n0 1 7\n50 2\n"), 2u);
  EXPECT_EQ(line_of("2 100\n0 1\n"), 3u);
  EXPECT_EQ(line_of("1 100\n5 1\n"), 2u);
  EXPECT_EQ(line_of("2 40\n0 1\n50 2\n"), 1u);
}

TEST(LoadPriorTest, UniformPriorInducesWidthProportionalPrices) {
  const auto a = pjm_bus("A");
  const LoadPrior prior = stationary_load_prior(a);
  const PriceDistribution dist = price_probabilities(a, prior);
  EXPECT_NEAR(dist.probabilities[0], 0.375, 1e-15);
  double total = 0.0;
  for (double p : dist.probabilities) total += p;
  EXPECT_NEAR(total, 1.0, 1e-15);
  EXPECT_EQ(prior.mean(), 800.0);
}

TEST(LoadPriorTest, CustomDensityIsNormalized) {
  const LoadPrior flat = LoadPrior::from_density([](double) { return 7.0; }, 1600.0);
  EXPECT_NEAR(flat.mass(0.0, 600.0), 0.375, 1e-12);
  EXPECT_NEAR(flat.mean(), 800.0, 1e-9);
  const LoadPrior ramp = LoadPrior::from_density([](double x) { return x; }, 1600.0);
  EXPECT_NEAR(ramp.mean(), 2.0 / 3.0 * 1600.0, 1e-9);
  EXPECT_THROW(LoadPrior::from_density([](double) { return 0.0; }, 1600.0), std::invalid_argument);
}

TEST(AveragePriceTest, ConstantCurve) {
  const auto c = LoadPriceCurve::constant(12.5);
  EXPECT_DOUBLE_EQ(average_price(c, stationary_load_prior(c)), 12.5);
}

TEST(AveragePriceTest, TableBusesUnderUniformPrior) {
  const auto e = pjm_bus("E");
  const auto a = pjm_bus("A");
  // (600*10 + 40*14 + 71.81*15 + 888.19*10) / 1600
  EXPECT_NEAR(average_price(e, stationary_load_prior(e)), 10.32440625, 1e-12);
  EXPECT_NEAR(average_price(a, stationary_load_prior(a)), 13.813616125, 1e-12);
  EXPECT_NEAR(average_price(a, stationary_load_prior(a)), oracle::uniform_average_price(a), 1e-12);
}

TEST(AveragePriceTest, BoundedByExtremePrices) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> price(1.0, 100.0);
  std::uniform_real_distribution<double> gap(1.0, 200.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> b{0.0}, p{price(rng)};
    for (int i = 0; i < 6; ++i) {
      b.push_back(b.back() + gap(rng));
      p.push_back(price(rng));
    }
    const LoadPriceCurve curve(b, p, b.back() + gap(rng));
    const double mean = average_price(curve, stationary_load_prior(curve));
    EXPECT_GE(mean, curve.min_price());
    EXPECT_LE(mean, curve.max_price());
  }
}

}  // namespace
}  // namespace gridqos

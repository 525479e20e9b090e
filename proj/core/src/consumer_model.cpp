#include "gridqos/consumer_model.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gridqos/numerics.hpp"
#include "gridqos/parallel.hpp"
#include "gridqos/text_format.hpp"

namespace gridqos {

UtilityModel::UtilityModel(Fn utility, Fn marginal, Fn marginal_inverse)
    : utility_(std::move(utility)),
      marginal_(std::move(marginal)),
      marginal_inverse_(std::move(marginal_inverse)) {
  if (!utility_ || !marginal_ || !marginal_inverse_) {
    throw std::invalid_argument("utility model needs U, U' and U'^{-1}");
  }
}

UtilityModel UtilityModel::logarithmic(double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("utility scale must be positive");
  return UtilityModel([scale](double x) { return scale * std::log(x); },
                      [scale](double x) { return scale / x; },
                      [scale](double p) { return scale / p; });
}

double UtilityModel::utility(double x) const { return utility_(std::max(x, kMinConsumption)); }

double UtilityModel::marginal(double x) const { return marginal_(std::max(x, kMinConsumption)); }

double UtilityModel::consumption_at_price(double price) const {
  if (!(price > 0.0)) throw std::domain_error(fmt::format("price must be positive, got {}", price));
  return std::max(marginal_inverse_(price), kMinConsumption);
}

double optimal_consumption(const UtilityModel& util, double price) {
  return util.consumption_at_price(price);
}

double welfare_gap(const UtilityModel& util, double true_price, double used_price) {
  if (!(true_price > 0.0) || !(used_price > 0.0)) {
    throw std::domain_error("prices must be positive");
  }
  if (true_price == used_price) return 0.0;
  const double x_true = util.consumption_at_price(true_price);
  const double x_used = util.consumption_at_price(used_price);
  const double gap = (util.utility(x_true) - true_price * x_true) -
                     (util.utility(x_used) - true_price * x_used);
  // Cancellation can push near-equal prices a few ulps below zero.
  return std::max(gap, 0.0);
}

CostCurve::CostCurve(std::vector<CostPoint> points) : points_(std::move(points)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].cost) || !std::isfinite(points_[i].param)) {
      throw std::invalid_argument("cost curve values must be finite");
    }
    if (i > 0 && !(points_[i].param > points_[i - 1].param)) {
      throw std::invalid_argument("cost curve parameters must be strictly ascending");
    }
  }
}

namespace {

// gap[i][j]: welfare lost when the true price is level i and level j is used.
std::vector<std::vector<double>> gap_matrix(const LoadPriceCurve& curve, const UtilityModel& util) {
  const std::size_t q = curve.size();
  std::vector<std::vector<double>> gap(q, std::vector<double>(q, 0.0));
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      gap[i][j] = welfare_gap(util, curve.prices()[i], curve.prices()[j]);
    }
  }
  return gap;
}

}  // namespace

double delay_cost(const LoadPriceCurve& curve, const UtilityModel& util, int delay_slots,
                  double theta, const LoadPrior& prior, const DelayCostOptions& options) {
  if (delay_slots < 0) throw std::domain_error("delay must be nonnegative");
  if (!(theta > 0.0)) throw std::domain_error("theta must be positive");
  if (prior.max_load() != curve.max_load()) {
    throw std::invalid_argument("prior and curve disagree on max load");
  }
  if (delay_slots == 0) return 0.0;

  const auto gap = gap_matrix(curve, util);
  const double variance = theta * delay_slots;
  const double max_load = curve.max_load();

  // Price in force d slots ago is constant on each interval of D0, so the
  // outer integral is split at the breakpoints and stays smooth per piece.
  double total = 0.0;
  for (std::size_t j = 0; j < curve.size(); ++j) {
    const LoadInterval interval = curve.load_interval_of_price(j);
    const int panels = std::max(
        2, static_cast<int>(std::lround(options.outer_panels * interval.width() / max_load)));
    auto integrand = [&](double d0) {
      const double weight = prior.density(d0);
      if (weight == 0.0) return 0.0;
      const PriceDistribution later =
          price_distribution_of(curve, TruncatedGaussian(d0, variance, max_load));
      double expected = 0.0;
      for (std::size_t i = 0; i < curve.size(); ++i) {
        expected += later.probabilities[i] * gap[i][j];
      }
      return weight * expected;
    };
    total += simpson(integrand, interval.lo, interval.hi, panels);
  }
  return std::max(total, 0.0);
}

double outage_loss_rate(const LoadPriceCurve& curve, const UtilityModel& util,
                        const LoadPrior& prior) {
  const double fallback = average_price(curve, prior);
  const PriceDistribution marginal = price_probabilities(curve, prior);
  double loss = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    loss += marginal.probabilities[i] * welfare_gap(util, curve.prices()[i], fallback);
  }
  return loss;
}

CostTables tabulate_costs(const LoadPriceCurve& curve, const UtilityModel& util,
                          std::span<const int> delay_grid, std::span<const double> zeta_grid,
                          double theta, const LoadPrior& prior, std::size_t threads,
                          const DelayCostOptions& options) {
  if (delay_grid.empty() || zeta_grid.empty()) throw std::invalid_argument("cost grids must be nonempty");

  std::vector<CostPoint> delay(delay_grid.size());
  parallel_for(delay_grid.size(), threads, [&](std::size_t i) {
    delay[i] = {static_cast<double>(delay_grid[i]),
                delay_cost(curve, util, delay_grid[i], theta, prior, options)};
  });

  const double rate = outage_loss_rate(curve, util, prior);
  std::vector<CostPoint> outage;
  outage.reserve(zeta_grid.size());
  for (double zeta : zeta_grid) {
    if (!(zeta >= 0.0 && zeta <= 1.0)) throw std::domain_error("outage probability outside [0, 1]");
    outage.push_back({zeta, zeta * rate});
  }
  return {CostCurve(std::move(delay)), CostCurve(std::move(outage))};
}

std::string cost_curve_csv(const CostCurve& curve) {
  std::string out = "param,cost\n";
  for (const CostPoint& p : curve.points()) {
    out += fmt::format("{},{}\n", format_significant(p.param, 6), format_significant(p.cost, 10));
  }
  return out;
}

}  // namespace gridqos

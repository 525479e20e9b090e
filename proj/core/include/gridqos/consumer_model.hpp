#pragma once

// Appliance utility, price-responsive consumption, and the welfare cost of
// acting on a stale (delayed) or default (outage) price.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gridqos/market_model.hpp"

namespace gridqos {

/// Smallest consumption at which utilities are evaluated; keeps log finite.
inline constexpr double kMinConsumption = 1e-9;

/// Concave utility U with derivative U' and its inverse. U' must fall from
/// +inf to 0 so that every positive price has an interior optimum.
class UtilityModel {
 public:
  using Fn = std::function<double(double)>;

  UtilityModel(Fn utility, Fn marginal, Fn marginal_inverse);

  /// U(x) = scale * log(x); the default appliance model uses scale 1000.
  static UtilityModel logarithmic(double scale = 1000.0);

  double utility(double x) const;
  double marginal(double x) const;
  double consumption_at_price(double price) const;

 private:
  Fn utility_;
  Fn marginal_;
  Fn marginal_inverse_;
};

/// argmax_x U(x) - p x, i.e. U'^{-1}(p). Throws std::domain_error for p <= 0.
double optimal_consumption(const UtilityModel& util, double price);

/// Welfare lost by consuming for `used_price` while paying `true_price`:
/// [U(x(p)) - p x(p)] - [U(x(p')) - p x(p')] with p = true, p' = used.
/// Nonnegative. Throws std::domain_error for nonpositive prices.
double welfare_gap(const UtilityModel& util, double true_price, double used_price);

/// Tabulated cost versus a QoS parameter (delay in slots or outage
/// probability). Parameters strictly ascending.
struct CostPoint {
  double param = 0.0;
  double cost = 0.0;
};

class CostCurve {
 public:
  CostCurve() = default;
  /// Throws std::invalid_argument if parameters are not strictly ascending
  /// or a cost is not finite.
  explicit CostCurve(std::vector<CostPoint> points);

  std::span<const CostPoint> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const CostPoint& operator[](std::size_t i) const { return points_[i]; }

 private:
  std::vector<CostPoint> points_;
};

struct DelayCostOptions {
  /// Total Simpson panels over [0, max_load] for the expectation over the
  /// current load; distributed across price intervals by width.
  int outer_panels = 2048;
};

/// Expected welfare gap when the appliance acts on the price observed
/// `delay_slots` earlier: the current load D0 is drawn from `prior`, the load
/// after the delay from the truncated-Gaussian forecast around D0.
/// C(0) == 0 exactly.
double delay_cost(const LoadPriceCurve& curve, const UtilityModel& util, int delay_slots,
                  double theta, const LoadPrior& prior, const DelayCostOptions& options = {});

/// Expected welfare gap per outage event, when the appliance falls back to
/// the average price. L(zeta) = zeta * outage_loss_rate.
double outage_loss_rate(const LoadPriceCurve& curve, const UtilityModel& util,
                        const LoadPrior& prior);

struct CostTables {
  CostCurve delay;   ///< (d, C(d))
  CostCurve outage;  ///< (zeta, zeta * L̄)
};

/// Evaluates delay_cost over `delay_grid` and zeta * L̄ over `zeta_grid`.
/// Grid points may be evaluated concurrently; the result does not depend on
/// `threads`.
CostTables tabulate_costs(const LoadPriceCurve& curve, const UtilityModel& util,
                          std::span<const int> delay_grid, std::span<const double> zeta_grid,
                          double theta, const LoadPrior& prior, std::size_t threads = 1,
                          const DelayCostOptions& options = {});

/// CSV with header "param,cost"; params at 6 significant digits.
std::string cost_curve_csv(const CostCurve& curve);

}  // namespace gridqos

#pragma once

// Stochastic load process and the piecewise load -> price (LMP) mapping.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gridqos {

/// Upper load bound closing the last price interval, in MW.
inline constexpr double kDefaultMaxLoad = 1600.0;

/// Load interval [lo, hi) in MW. The last interval of a curve is closed.
struct LoadInterval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  friend bool operator==(const LoadInterval&, const LoadInterval&) = default;
};

/// Piecewise-constant map from load (MW) to price ($/MWh). Interval i is
/// [breakpoints[i], breakpoints[i+1]); the last one is
/// [breakpoints[Q-1], max_load].
class LoadPriceCurve {
 public:
  /// Throws std::invalid_argument unless breakpoints start at 0 and ascend
  /// strictly, prices are positive and aligned, and max_load exceeds the
  /// last breakpoint.
  LoadPriceCurve(std::vector<double> breakpoints, std::vector<double> prices,
                 double max_load = kDefaultMaxLoad);

  /// Uniform price c over [0, max_load].
  static LoadPriceCurve constant(double price, double max_load = kDefaultMaxLoad);

  std::size_t size() const { return prices_.size(); }
  double max_load() const { return max_load_; }
  std::span<const double> breakpoints() const { return breakpoints_; }
  std::span<const double> prices() const { return prices_; }

  /// Index of the interval containing `load`. Throws std::domain_error
  /// outside [0, max_load].
  std::size_t interval_index(double load) const;

  double price_of_load(double load) const;

  /// Throws std::out_of_range for i >= size().
  LoadInterval load_interval_of_price(std::size_t i) const;

  double min_price() const;
  double max_price() const;

  friend bool operator==(const LoadPriceCurve&, const LoadPriceCurve&) = default;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> prices_;
  double max_load_;
};

double price_of_load(const LoadPriceCurve& curve, double load);
LoadInterval load_interval_of_price(const LoadPriceCurve& curve, std::size_t i);

/// Curve file: first line "Q d_max", then Q lines "breakpoint price".
/// Throws ParseError naming the offending line.
LoadPriceCurve parse_curve(std::string_view text);
std::string emit_curve(const LoadPriceCurve& curve);

/// Positive part of a Gaussian with mean `mean` and variance `variance`,
/// truncated to [0, max_load]. The kernel is exp(-(x - mean)^2 / (2 variance)).
class TruncatedGaussian {
 public:
  /// Throws std::domain_error unless variance > 0 and max_load > 0.
  TruncatedGaussian(double mean, double variance, double max_load);

  double mean() const { return mean_; }
  double variance() const { return variance_; }
  double max_load() const { return max_load_; }

  /// Integral of the unnormalized kernel over [0, max_load].
  double normalizer() const { return normalizer_; }

  /// Throws std::domain_error outside [0, max_load].
  double pdf(double x) const;
  double cdf(double x) const;
  /// Probability of [lo, hi] clipped to the support.
  double mass(double lo, double hi) const;

 private:
  double kernel_mass(double lo, double hi) const;

  double mean_;
  double variance_;
  double max_load_;
  double normalizer_;
};

double truncated_gaussian_pdf(double x, const TruncatedGaussian& dist);

/// Zero elapsed time: the load is known exactly.
struct PointMass {
  double load = 0.0;
};

using LoadForecast = std::variant<PointMass, TruncatedGaussian>;

/// Load distribution `elapsed_slots` after observing `current_load`: unbiased
/// mean, variance theta * t. Returns a PointMass for t == 0.
LoadForecast load_distribution_after(double current_load, double elapsed_slots,
                                     double theta, double max_load);

/// Probabilities aligned with a curve's price levels.
struct PriceDistribution {
  std::vector<double> probabilities;

  double entropy() const;
};

PriceDistribution price_distribution_after(const LoadPriceCurve& curve, double current_load,
                                           double elapsed_slots, double theta);

/// Interval masses of a forecast over the curve's price intervals. Same as
/// price_distribution_after but reusable with a precomputed forecast.
PriceDistribution price_distribution_of(const LoadPriceCurve& curve,
                                        const LoadForecast& forecast);

/// Marginal distribution of the current load on [0, max_load], used for
/// expectations over "all realizations" of the price.
class LoadPrior {
 public:
  static LoadPrior uniform(double max_load);
  /// Normalizes `density` numerically over [0, max_load]. Throws
  /// std::invalid_argument if it does not integrate to a positive value.
  static LoadPrior from_density(std::function<double(double)> density, double max_load);

  bool is_uniform() const { return !density_; }
  double max_load() const { return max_load_; }
  double density(double x) const;
  double mass(double lo, double hi) const;
  double mean() const;

 private:
  LoadPrior(std::function<double(double)> density, double max_load, double scale);

  std::function<double(double)> density_;
  double max_load_;
  double scale_;
};

/// Default prior: uniform over [0, curve.max_load()].
LoadPrior stationary_load_prior(const LoadPriceCurve& curve);

/// Price-level probabilities induced by a load prior.
PriceDistribution price_probabilities(const LoadPriceCurve& curve, const LoadPrior& prior);

/// Mean price under the prior; the default price used during an outage.
double average_price(const LoadPriceCurve& curve, const LoadPrior& prior);

}  // namespace gridqos

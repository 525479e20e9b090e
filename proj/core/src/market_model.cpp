#include "gridqos/market_model.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gridqos/numerics.hpp"
#include "gridqos/text_format.hpp"

namespace gridqos {

namespace {

constexpr int kPriorPanels = 8192;

}  // namespace

LoadPriceCurve::LoadPriceCurve(std::vector<double> breakpoints, std::vector<double> prices,
                               double max_load)
    : breakpoints_(std::move(breakpoints)), prices_(std::move(prices)), max_load_(max_load) {
  if (breakpoints_.empty()) throw std::invalid_argument("load-price curve needs at least one interval");
  if (breakpoints_.size() != prices_.size()) {
    throw std::invalid_argument(fmt::format("curve has {} breakpoints but {} prices",
                                            breakpoints_.size(), prices_.size()));
  }
  if (breakpoints_.front() != 0.0) throw std::invalid_argument("first breakpoint must be 0");
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (!std::isfinite(breakpoints_[i]) || !std::isfinite(prices_[i])) {
      throw std::invalid_argument("curve values must be finite");
    }
    if (i > 0 && !(breakpoints_[i] > breakpoints_[i - 1])) {
      throw std::invalid_argument("breakpoints must be strictly ascending");
    }
    if (!(prices_[i] > 0.0)) throw std::invalid_argument("prices must be positive");
  }
  if (!std::isfinite(max_load_) || !(max_load_ > breakpoints_.back())) {
    throw std::invalid_argument("max load must exceed the last breakpoint");
  }
}

LoadPriceCurve LoadPriceCurve::constant(double price, double max_load) {
  return LoadPriceCurve({0.0}, {price}, max_load);
}

std::size_t LoadPriceCurve::interval_index(double load) const {
  if (!(load >= 0.0 && load <= max_load_)) {
    throw std::domain_error(fmt::format("load {} outside [0, {}]", load, max_load_));
  }
  // Last breakpoint <= load; left-closed intervals.
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), load);
  return static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
}

double LoadPriceCurve::price_of_load(double load) const { return prices_[interval_index(load)]; }

LoadInterval LoadPriceCurve::load_interval_of_price(std::size_t i) const {
  if (i >= prices_.size()) {
    throw std::out_of_range(fmt::format("price index {} out of range [0, {})", i, prices_.size()));
  }
  const double hi = i + 1 < breakpoints_.size() ? breakpoints_[i + 1] : max_load_;
  return {breakpoints_[i], hi};
}

double LoadPriceCurve::min_price() const { return *std::min_element(prices_.begin(), prices_.end()); }
double LoadPriceCurve::max_price() const { return *std::max_element(prices_.begin(), prices_.end()); }

double price_of_load(const LoadPriceCurve& curve, double load) { return curve.price_of_load(load); }

LoadInterval load_interval_of_price(const LoadPriceCurve& curve, std::size_t i) {
  return curve.load_interval_of_price(i);
}

LoadPriceCurve parse_curve(std::string_view text) {
  std::vector<std::string_view> lines = split_lines(text);
  std::size_t line_no = 0;
  auto next_content_line = [&]() -> std::vector<std::string_view> {
    while (line_no < lines.size()) {
      auto tokens = split_whitespace(lines[line_no++]);
      if (!tokens.empty()) return tokens;
    }
    return {};
  };

  auto header = next_content_line();
  if (header.size() != 2) throw ParseError(line_no, "curve header must be \"Q d_max\"");
  const auto count = parse_integer(header[0]);
  const auto max_load = parse_double(header[1]);
  if (!count || *count < 1) throw ParseError(line_no, "interval count must be a positive integer");
  if (!max_load || !std::isfinite(*max_load)) throw ParseError(line_no, "d_max must be a finite number");

  std::vector<double> breakpoints;
  std::vector<double> prices;
  for (long long i = 0; i < *count; ++i) {
    auto tokens = next_content_line();
    if (tokens.empty()) {
      throw ParseError(line_no + 1, fmt::format("expected {} intervals, found {}", *count, i));
    }
    if (tokens.size() != 2) throw ParseError(line_no, "expected \"breakpoint price\"");
    const auto b = parse_double(tokens[0]);
    const auto p = parse_double(tokens[1]);
    if (!b || !std::isfinite(*b)) throw ParseError(line_no, "breakpoint is not a finite number");
    if (!p || !std::isfinite(*p)) throw ParseError(line_no, "price is not a finite number");
    if (!(*p > 0.0)) throw ParseError(line_no, "price must be positive");
    if (breakpoints.empty() ? *b != 0.0 : !(*b > breakpoints.back())) {
      throw ParseError(line_no, breakpoints.empty() ? "first breakpoint must be 0"
                                                    : "breakpoints must be strictly ascending");
    }
    breakpoints.push_back(*b);
    prices.push_back(*p);
  }
  if (!next_content_line().empty()) throw ParseError(line_no, "unexpected trailing data");
  if (!(*max_load > breakpoints.back())) {
    throw ParseError(1, "d_max must exceed the last breakpoint");
  }
  return LoadPriceCurve(std::move(breakpoints), std::move(prices), *max_load);
}

std::string emit_curve(const LoadPriceCurve& curve) {
  std::string out = fmt::format("{} {}\n", curve.size(), format_shortest(curve.max_load()));
  for (std::size_t i = 0; i < curve.size(); ++i) {
    out += fmt::format("{} {}\n", format_shortest(curve.breakpoints()[i]),
                       format_shortest(curve.prices()[i]));
  }
  return out;
}

TruncatedGaussian::TruncatedGaussian(double mean, double variance, double max_load)
    : mean_(mean), variance_(variance), max_load_(max_load) {
  if (!(variance > 0.0) || !std::isfinite(variance)) {
    throw std::domain_error(fmt::format("variance must be positive, got {}", variance));
  }
  if (!(max_load > 0.0) || !std::isfinite(max_load)) {
    throw std::domain_error(fmt::format("max load must be positive, got {}", max_load));
  }
  if (!std::isfinite(mean)) throw std::domain_error("mean must be finite");
  normalizer_ = kernel_mass(0.0, max_load_);
  if (!(normalizer_ > 0.0)) {
    throw std::domain_error("truncated Gaussian has no mass on [0, max_load]");
  }
}

double TruncatedGaussian::kernel_mass(double lo, double hi) const {
  const double sd = std::sqrt(variance_);
  return std::sqrt(2.0 * M_PI * variance_) * standard_normal_mass((lo - mean_) / sd, (hi - mean_) / sd);
}

double TruncatedGaussian::pdf(double x) const {
  if (!(x >= 0.0 && x <= max_load_)) {
    throw std::domain_error(fmt::format("load {} outside support [0, {}]", x, max_load_));
  }
  const double z = x - mean_;
  return std::exp(-z * z / (2.0 * variance_)) / normalizer_;
}

double TruncatedGaussian::cdf(double x) const { return mass(0.0, x); }

double TruncatedGaussian::mass(double lo, double hi) const {
  lo = std::max(lo, 0.0);
  hi = std::min(hi, max_load_);
  if (hi <= lo) return 0.0;
  return std::clamp(kernel_mass(lo, hi) / normalizer_, 0.0, 1.0);
}

double truncated_gaussian_pdf(double x, const TruncatedGaussian& dist) { return dist.pdf(x); }

LoadForecast load_distribution_after(double current_load, double elapsed_slots, double theta,
                                     double max_load) {
  if (!(elapsed_slots >= 0.0)) throw std::domain_error("elapsed time must be nonnegative");
  if (!(theta > 0.0)) throw std::domain_error("variance growth rate theta must be positive");
  if (!(current_load >= 0.0 && current_load <= max_load)) {
    throw std::domain_error(fmt::format("load {} outside [0, {}]", current_load, max_load));
  }
  if (elapsed_slots == 0.0) return PointMass{current_load};
  return TruncatedGaussian(current_load, theta * elapsed_slots, max_load);
}

double PriceDistribution::entropy() const {
  double h = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

PriceDistribution price_distribution_of(const LoadPriceCurve& curve, const LoadForecast& forecast) {
  PriceDistribution out;
  out.probabilities.assign(curve.size(), 0.0);
  if (const auto* point = std::get_if<PointMass>(&forecast)) {
    out.probabilities[curve.interval_index(point->load)] = 1.0;
    return out;
  }
  const auto& dist = std::get<TruncatedGaussian>(forecast);
  // Differences of a running CDF telescope to exactly CDF(max_load).
  double previous = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double upper = i + 1 < curve.size() ? dist.cdf(curve.breakpoints()[i + 1]) : 1.0;
    out.probabilities[i] = std::max(upper - previous, 0.0);
    previous = std::max(previous, upper);
  }
  return out;
}

PriceDistribution price_distribution_after(const LoadPriceCurve& curve, double current_load,
                                           double elapsed_slots, double theta) {
  return price_distribution_of(
      curve, load_distribution_after(current_load, elapsed_slots, theta, curve.max_load()));
}

LoadPrior::LoadPrior(std::function<double(double)> density, double max_load, double scale)
    : density_(std::move(density)), max_load_(max_load), scale_(scale) {}

LoadPrior LoadPrior::uniform(double max_load) {
  if (!(max_load > 0.0)) throw std::invalid_argument("max load must be positive");
  return LoadPrior(nullptr, max_load, 1.0 / max_load);
}

LoadPrior LoadPrior::from_density(std::function<double(double)> density, double max_load) {
  if (!(max_load > 0.0)) throw std::invalid_argument("max load must be positive");
  if (!density) throw std::invalid_argument("density is empty");
  const double total = simpson(density, 0.0, max_load, kPriorPanels);
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw std::invalid_argument("prior density must integrate to a positive value");
  }
  return LoadPrior(std::move(density), max_load, 1.0 / total);
}

double LoadPrior::density(double x) const {
  if (!(x >= 0.0 && x <= max_load_)) return 0.0;
  return density_ ? scale_ * density_(x) : scale_;
}

double LoadPrior::mass(double lo, double hi) const {
  lo = std::max(lo, 0.0);
  hi = std::min(hi, max_load_);
  if (hi <= lo) return 0.0;
  if (!density_) return (hi - lo) * scale_;
  const int panels = std::max(64, static_cast<int>(kPriorPanels * (hi - lo) / max_load_));
  return scale_ * simpson(density_, lo, hi, panels);
}

double LoadPrior::mean() const {
  if (!density_) return 0.5 * max_load_;
  return scale_ * simpson([&](double x) { return x * density_(x); }, 0.0, max_load_, kPriorPanels);
}

LoadPrior stationary_load_prior(const LoadPriceCurve& curve) {
  return LoadPrior::uniform(curve.max_load());
}

PriceDistribution price_probabilities(const LoadPriceCurve& curve, const LoadPrior& prior) {
  if (prior.max_load() != curve.max_load()) {
    throw std::invalid_argument("prior and curve disagree on max load");
  }
  PriceDistribution out;
  out.probabilities.resize(curve.size());
  double total = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const LoadInterval j = curve.load_interval_of_price(i);
    out.probabilities[i] = prior.mass(j.lo, j.hi);
    total += out.probabilities[i];
  }
  for (double& p : out.probabilities) p /= total;
  return out;
}

double average_price(const LoadPriceCurve& curve, const LoadPrior& prior) {
  const PriceDistribution dist = price_probabilities(curve, prior);
  double mean = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) mean += curve.prices()[i] * dist.probabilities[i];
  return std::clamp(mean, curve.min_price(), curve.max_price());
}

}  // namespace gridqos

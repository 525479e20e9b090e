#include "gridqos/qos_derivation.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gridqos {

namespace {

constexpr double kGridSlack = 1e-12;

void check_zeta_grid(std::span<const double> zeta_grid) {
  if (zeta_grid.empty()) throw std::invalid_argument("outage-probability grid is empty");
  for (double zeta : zeta_grid) {
    if (!(zeta > 0.0) || zeta > kMaxOutageProbability + kGridSlack) {
      throw std::domain_error(
          fmt::format("outage probability {} outside (0, {}]", zeta, kMaxOutageProbability));
    }
  }
}

}  // namespace

TaxFunctions TaxFunctions::defaults() {
  return {[](double d) { return std::exp(4.0 / d); },
          [](double zeta) { return std::exp(0.01 / zeta); }};
}

TaxFunctions TaxFunctions::none() {
  return {[](double) { return 0.0; }, [](double) { return 0.0; }};
}

std::string_view to_string(ObjectiveMode mode) {
  return mode == ObjectiveMode::kLiteral ? "literal" : "consistent";
}

ObjectiveMode parse_objective_mode(std::string_view text) {
  if (text == "literal") return ObjectiveMode::kLiteral;
  if (text == "consistent") return ObjectiveMode::kConsistent;
  throw std::invalid_argument(fmt::format("unknown objective mode '{}'", text));
}

std::vector<int> default_delay_grid(int max_delay) {
  if (max_delay < 1) throw std::invalid_argument("delay grid needs max delay >= 1");
  std::vector<int> grid(static_cast<std::size_t>(max_delay));
  for (int d = 1; d <= max_delay; ++d) grid[static_cast<std::size_t>(d - 1)] = d;
  return grid;
}

std::vector<double> default_zeta_grid(double step) {
  if (!(step > 0.0) || step > kMaxOutageProbability + kGridSlack) {
    throw std::invalid_argument(fmt::format("zeta step must be in (0, {}]", kMaxOutageProbability));
  }
  const auto count = static_cast<long>(std::floor(kMaxOutageProbability / step + 1e-9));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  for (long i = 1; i <= count; ++i) grid.push_back(std::min(i * step, kMaxOutageProbability));
  return grid;
}

double outage_term(double zeta, double loss_rate, ObjectiveMode mode) {
  return mode == ObjectiveMode::kLiteral ? zeta * zeta * loss_rate : zeta * loss_rate;
}

DelayRequirement optimal_delay_requirement(const CostCurve& delay_costs, const TaxFunctions& taxes) {
  if (delay_costs.empty()) throw std::invalid_argument("delay grid is empty");
  DelayRequirement best{0.0, std::numeric_limits<double>::infinity()};
  for (const CostPoint& p : delay_costs.points()) {
    const double objective = p.cost + taxes.delay_tax(p.param);
    if (objective < best.objective) best = {p.param, objective};
  }
  return best;
}

OutageRequirement optimal_outage_requirement(double loss_rate, const TaxFunctions& taxes,
                                             std::span<const double> zeta_grid,
                                             ObjectiveMode mode) {
  check_zeta_grid(zeta_grid);
  OutageRequirement best{0.0, std::numeric_limits<double>::infinity()};
  for (double zeta : zeta_grid) {
    const double objective = outage_term(zeta, loss_rate, mode) + taxes.outage_tax(zeta);
    if (objective < best.objective) best = {zeta, objective};
  }
  return best;
}

QosRequirement joint_qos_requirement(const CostCurve& delay_costs, double loss_rate,
                                     const TaxFunctions& taxes,
                                     std::span<const double> zeta_grid, ObjectiveMode mode) {
  if (delay_costs.empty()) throw std::invalid_argument("delay grid is empty");
  check_zeta_grid(zeta_grid);

  std::vector<double> outage_part(zeta_grid.size());
  for (std::size_t z = 0; z < zeta_grid.size(); ++z) {
    outage_part[z] = outage_term(zeta_grid[z], loss_rate, mode) + taxes.outage_tax(zeta_grid[z]);
  }

  QosRequirement best{0.0, 0.0, std::numeric_limits<double>::infinity(), mode};
  for (const CostPoint& p : delay_costs.points()) {
    const double delay_tax = taxes.delay_tax(p.param);
    for (std::size_t z = 0; z < zeta_grid.size(); ++z) {
      const double zeta = zeta_grid[z];
      const double objective = (1.0 - zeta) * p.cost + outage_part[z] + delay_tax;
      if (objective < best.objective_value) best = {p.param, zeta, objective, mode};
    }
  }
  return best;
}

}  // namespace gridqos

#pragma once

// Selection of delay and outage-probability requirements by trading the
// welfare cost of degraded communication against network taxes.

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gridqos/consumer_model.hpp"

namespace gridqos {

/// Largest admissible outage probability.
inline constexpr double kMaxOutageProbability = 0.1;

/// Network price for delivering a given delay (slots) or outage probability.
struct TaxFunctions {
  std::function<double(double)> delay_tax;
  std::function<double(double)> outage_tax;

  /// P(d) = exp(4 / d), T(zeta) = exp(0.01 / zeta).
  static TaxFunctions defaults();
  /// Both taxes identically zero.
  static TaxFunctions none();
};

/// How the outage term enters the objective. kLiteral multiplies zeta * L(zeta)
/// with L(zeta) = zeta * L̄ (two zeta factors); kConsistent uses zeta * L̄.
enum class ObjectiveMode { kLiteral, kConsistent };

std::string_view to_string(ObjectiveMode mode);
/// Accepts "literal" or "consistent"; throws std::invalid_argument otherwise.
ObjectiveMode parse_objective_mode(std::string_view text);

struct DelayRequirement {
  double d_star = 0.0;
  double objective = 0.0;
};

struct OutageRequirement {
  double zeta_star = 0.0;
  double objective = 0.0;
};

struct QosRequirement {
  double d_star = 0.0;
  double zeta_star = 0.0;
  double objective_value = 0.0;
  ObjectiveMode mode = ObjectiveMode::kConsistent;
};

/// Delay slots 1..max_delay.
std::vector<int> default_delay_grid(int max_delay = 50);
/// step, 2 step, ... up to 0.1.
std::vector<double> default_zeta_grid(double step = 0.001);

/// Outage term of the objective: zeta^2 L̄ (literal) or zeta L̄ (consistent).
double outage_term(double zeta, double loss_rate, ObjectiveMode mode);

/// argmin_d C(d) + P(d) over the curve's grid; ties go to the smaller d.
/// Throws std::invalid_argument on an empty curve.
DelayRequirement optimal_delay_requirement(const CostCurve& delay_costs, const TaxFunctions& taxes);

/// argmin_zeta outage_term + T(zeta); ties go to the smaller zeta. Throws
/// std::invalid_argument on an empty grid and std::domain_error if a grid
/// point lies outside (0, 0.1].
OutageRequirement optimal_outage_requirement(double loss_rate, const TaxFunctions& taxes,
                                             std::span<const double> zeta_grid,
                                             ObjectiveMode mode);

/// argmin over the product grid of
///   (1 - zeta) C(d) + outage_term(zeta) + P(d) + T(zeta),
/// ties toward smaller d, then smaller zeta.
QosRequirement joint_qos_requirement(const CostCurve& delay_costs, double loss_rate,
                                     const TaxFunctions& taxes,
                                     std::span<const double> zeta_grid, ObjectiveMode mode);

}  // namespace gridqos

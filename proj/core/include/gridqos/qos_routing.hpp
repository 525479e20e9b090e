#pragma once

// Multi-constrained routing: the greedy K-approximation (shortest path under
// the max-normalized auxiliary weight), the relaxation shortest-path engine,
// and an exact enumeration oracle for small instances.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "gridqos/qos_graph.hpp"

namespace gridqos {

/// Tolerance for all floating-point bound comparisons.
inline constexpr double kBoundTolerance = 1e-9;

/// w_A(e) = max_k w_k(e) / W_k for every edge, in edge order.
std::vector<double> auxiliary_weights(const WeightedNetwork& net, const ConstraintVector& w);

/// Minimum-weight source -> target path under nonnegative scalar edge weights,
/// by synchronous rounds of edge relaxation (each round only uses distances
/// known at the end of the previous round, as a distance-vector exchange
/// would). Stops after a round without change, at most n rounds.
///
/// Among equal-distance candidates in a round a node keeps the first label it
/// obtained; within one round the lowest predecessor id, then the lowest edge
/// index, wins. Returns nullopt iff target is unreachable.
std::optional<RoutePath> shortest_path(const WeightedNetwork& net, std::span<const double> scalar_weights,
                                       NodeId source, NodeId target);

enum class Algorithm { kGreedy, kExact };
std::string_view to_string(Algorithm algorithm);

struct RoutingOutcome {
  std::optional<RoutePath> path;
  double delta_of_path = 0.0;  ///< l(path); +inf when unreachable
  bool feasible = false;       ///< l(path) <= 1
  Algorithm algorithm = Algorithm::kGreedy;
};

/// Greedy K-approximation: w_k(p) <= K * delta_opt * W_k for all k.
RoutingOutcome omcr_greedy(const WeightedNetwork& net, NodeId source, NodeId target,
                           const ConstraintVector& w);

/// Raised when the exact oracle is asked to enumerate a too-large instance.
class SizeGuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct ExactOptions {
  std::size_t max_nodes = 16;
};

struct OracleResult {
  double delta_opt = 0.0;  ///< +inf when unreachable
  std::optional<RoutePath> optimal_path;
};

/// delta_opt = min over simple s -> t paths of l(p), by depth-first
/// enumeration with bound pruning. Throws SizeGuardError if the network has
/// more than options.max_nodes nodes.
OracleResult exact_optimal_value(const WeightedNetwork& net, NodeId source, NodeId target,
                                 const ConstraintVector& w, const ExactOptions& options = {});

enum class Verdict { kFeasible, kInfeasible, kUnknown };
std::string_view to_string(Verdict verdict);

struct McrDecision {
  Verdict verdict = Verdict::kUnknown;
  std::optional<RoutePath> witness;
  std::optional<double> delta_opt;  ///< set by the exact backend
  bool unreachable = false;
};

/// Decides MCR feasibility. The exact backend is complete (feasible iff
/// delta_opt <= 1); the greedy backend only certifies feasibility and reports
/// kUnknown when its path violates a bound. An unreachable target is
/// kInfeasible for both.
McrDecision mcr_decide(const WeightedNetwork& net, NodeId source, NodeId target,
                       const ConstraintVector& w, Algorithm backend,
                       const ExactOptions& options = {});

}  // namespace gridqos

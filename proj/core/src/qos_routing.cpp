#include "gridqos/qos_routing.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace gridqos {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kNoEdge = std::numeric_limits<std::size_t>::max();

void check_endpoints(const WeightedNetwork& net, NodeId source, NodeId target) {
  if (source >= net.node_count() || target >= net.node_count()) {
    throw std::out_of_range(fmt::format("source {} or target {} outside [0, {})", source, target,
                                        net.node_count()));
  }
}

void check_arity(const WeightedNetwork& net, const ConstraintVector& w) {
  if (w.size() != net.metric_count()) {
    throw std::invalid_argument(fmt::format("constraint vector has {} bounds but the network has {} metrics",
                                            w.size(), net.metric_count()));
  }
}

double length_of(std::span<const double> weights, const ConstraintVector& w) {
  double length = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) length = std::max(length, weights[k] / w[k]);
  return length;
}

}  // namespace

std::vector<double> auxiliary_weights(const WeightedNetwork& net, const ConstraintVector& w) {
  check_arity(net, w);
  std::vector<double> aux;
  aux.reserve(net.edge_count());
  for (const Edge& e : net.edges()) aux.push_back(length_of(e.weights, w));
  return aux;
}

std::optional<RoutePath> shortest_path(const WeightedNetwork& net, std::span<const double> scalar_weights,
                                       NodeId source, NodeId target) {
  check_endpoints(net, source, target);
  if (scalar_weights.size() != net.edge_count()) {
    throw std::invalid_argument("one scalar weight per edge is required");
  }
  for (double x : scalar_weights) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw std::invalid_argument("scalar weights must be finite and nonnegative");
  }
  if (source == target) return RoutePath::from_edges(net, source, {});

  const std::size_t n = net.node_count();
  std::vector<double> dist(n, kInf);
  std::vector<std::size_t> pred(n, kNoEdge);
  dist[source] = 0.0;

  std::vector<double> next_dist;
  std::vector<std::size_t> next_pred;
  const auto edges = net.edges();
  for (std::size_t round = 0; round < n; ++round) {
    next_dist = dist;
    next_pred = pred;
    bool changed = false;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const NodeId u = edges[i].source;
      const NodeId v = edges[i].target;
      if (dist[u] == kInf) continue;
      const double candidate = dist[u] + scalar_weights[i];
      if (candidate < next_dist[v]) {
        next_dist[v] = candidate;
        next_pred[v] = i;
        changed = true;
      } else if (candidate == next_dist[v] && next_dist[v] < dist[v] &&
                 u < edges[next_pred[v]].source) {
        next_pred[v] = i;
      }
    }
    dist.swap(next_dist);
    pred.swap(next_pred);
    if (!changed) break;
  }
  if (dist[target] == kInf) return std::nullopt;

  // Strict improvements only, so the predecessor graph is a tree.
  std::vector<std::size_t> reversed;
  for (NodeId v = target; v != source; v = edges[pred[v]].source) reversed.push_back(pred[v]);
  return RoutePath::from_edges(net, source, {reversed.rbegin(), reversed.rend()});
}

std::string_view to_string(Algorithm algorithm) {
  return algorithm == Algorithm::kGreedy ? "greedy" : "exact";
}

RoutingOutcome omcr_greedy(const WeightedNetwork& net, NodeId source, NodeId target,
                           const ConstraintVector& w) {
  const std::vector<double> aux = auxiliary_weights(net, w);
  RoutingOutcome outcome;
  outcome.algorithm = Algorithm::kGreedy;
  outcome.path = shortest_path(net, aux, source, target);
  if (!outcome.path) {
    outcome.delta_of_path = kInf;
    outcome.feasible = false;
    return outcome;
  }
  outcome.delta_of_path = length_of(outcome.path->weights, w);
  outcome.feasible = outcome.delta_of_path <= 1.0;
  return outcome;
}

OracleResult exact_optimal_value(const WeightedNetwork& net, NodeId source, NodeId target,
                                 const ConstraintVector& w, const ExactOptions& options) {
  check_endpoints(net, source, target);
  check_arity(net, w);
  if (net.node_count() > options.max_nodes) {
    throw SizeGuardError(fmt::format("exact enumeration limited to {} nodes, network has {}",
                                     options.max_nodes, net.node_count()));
  }
  OracleResult result{kInf, std::nullopt};
  if (source == target) {
    result.delta_opt = 0.0;
    result.optimal_path = RoutePath::from_edges(net, source, {});
    return result;
  }

  const std::size_t k_count = net.metric_count();
  std::vector<bool> on_path(net.node_count(), false);
  std::vector<std::size_t> edge_stack;
  std::vector<std::size_t> best_edges;
  // prefix[depth * K + k]: k-th weight of the current prefix of `depth` edges,
  // summed in path order so no add/subtract drift accumulates.
  std::vector<double> prefix((net.node_count() + 1) * k_count, 0.0);

  // Weights are nonnegative, so a prefix at least as long as the incumbent
  // cannot lead to a strictly better path.
  auto visit = [&](auto&& self, NodeId node, std::size_t depth) -> void {
    const std::span<const double> here(prefix.data() + depth * k_count, k_count);
    if (node == target) {
      const double length = length_of(here, w);
      if (length < result.delta_opt) {
        result.delta_opt = length;
        best_edges = edge_stack;
      }
      return;
    }
    on_path[node] = true;
    double* next = prefix.data() + (depth + 1) * k_count;
    for (std::size_t id : net.out_edges(node)) {
      const Edge& e = net.edge(id);
      if (on_path[e.target]) continue;
      for (std::size_t k = 0; k < k_count; ++k) next[k] = here[k] + e.weights[k];
      if (length_of({next, k_count}, w) < result.delta_opt) {
        edge_stack.push_back(id);
        self(self, e.target, depth + 1);
        edge_stack.pop_back();
      }
    }
    on_path[node] = false;
  };
  visit(visit, source, 0);

  if (result.delta_opt < kInf) {
    result.optimal_path = RoutePath::from_edges(net, source, best_edges);
  }
  return result;
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kFeasible:
      return "feasible";
    case Verdict::kInfeasible:
      return "infeasible";
    case Verdict::kUnknown:
      break;
  }
  return "unknown";
}

McrDecision mcr_decide(const WeightedNetwork& net, NodeId source, NodeId target,
                       const ConstraintVector& w, Algorithm backend, const ExactOptions& options) {
  McrDecision decision;
  if (backend == Algorithm::kExact) {
    OracleResult oracle = exact_optimal_value(net, source, target, w, options);
    decision.delta_opt = oracle.delta_opt;
    decision.unreachable = !oracle.optimal_path.has_value();
    decision.verdict = oracle.delta_opt <= 1.0 ? Verdict::kFeasible : Verdict::kInfeasible;
    if (decision.verdict == Verdict::kFeasible) decision.witness = std::move(oracle.optimal_path);
    return decision;
  }
  RoutingOutcome greedy = omcr_greedy(net, source, target, w);
  if (!greedy.path) {
    decision.verdict = Verdict::kInfeasible;
    decision.unreachable = true;
  } else if (greedy.feasible) {
    decision.verdict = Verdict::kFeasible;
    decision.witness = std::move(greedy.path);
  } else {
    decision.verdict = Verdict::kUnknown;
  }
  return decision;
}

}  // namespace gridqos

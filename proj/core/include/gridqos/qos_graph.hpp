#pragma once

// Directed network with K additive, nonnegative weights per edge, and the
// path weight / length / feasibility semantics used by the router.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gridqos {

using NodeId = std::uint32_t;

struct Edge {
  NodeId source = 0;
  NodeId target = 0;
  std::vector<double> weights;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Immutable K-weighted digraph. Parallel edges are kept; self-loops,
/// negative or non-finite weights are rejected.
class WeightedNetwork {
 public:
  /// Throws std::invalid_argument on any invariant violation.
  WeightedNetwork(std::size_t node_count, std::size_t metric_count, std::vector<Edge> edges);

  /// Each undirected edge becomes two opposite arcs with the same weights.
  static WeightedNetwork from_undirected(std::size_t node_count, std::size_t metric_count,
                                         const std::vector<Edge>& edges);

  std::size_t node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t metric_count() const { return metric_count_; }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(std::size_t index) const { return edges_.at(index); }
  /// Indices of edges leaving `node`, in file order.
  std::span<const std::size_t> out_edges(NodeId node) const;

  friend bool operator==(const WeightedNetwork& a, const WeightedNetwork& b) {
    return a.node_count_ == b.node_count_ && a.metric_count_ == b.metric_count_ &&
           a.edges_ == b.edges_;
  }

 private:
  std::size_t node_count_;
  std::size_t metric_count_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> out_offsets_;
  std::vector<std::size_t> out_index_;
};

/// Bounds W_1..W_K, each strictly positive.
class ConstraintVector {
 public:
  /// Throws std::invalid_argument if empty or any bound is not a positive
  /// finite number.
  explicit ConstraintVector(std::vector<double> bounds);

  std::size_t size() const { return bounds_.size(); }
  double operator[](std::size_t k) const { return bounds_[k]; }
  std::span<const double> bounds() const { return bounds_; }

  ConstraintVector scaled(double factor) const;

 private:
  std::vector<double> bounds_;
};

/// Parses "w1,w2,...,wK". Throws ParseError on malformed text.
ConstraintVector parse_constraints(std::string_view text);

/// Simple s -> t path given by the edges it uses. `nodes` has one more entry
/// than `edges`; an empty edge list is the trivial path s = t.
struct RoutePath {
  std::vector<NodeId> nodes;
  std::vector<std::size_t> edges;
  std::vector<double> weights;

  /// Validates contiguity and simplicity and accumulates per-metric weights.
  /// Throws std::invalid_argument.
  static RoutePath from_edges(const WeightedNetwork& net, NodeId source,
                              std::vector<std::size_t> edge_ids);
  /// Uses, for every hop, the lowest-index edge between the two nodes.
  static RoutePath from_nodes(const WeightedNetwork& net, std::vector<NodeId> nodes);

  NodeId source() const { return nodes.front(); }
  NodeId target() const { return nodes.back(); }
  bool empty() const { return edges.empty(); }

  /// Hyphen-joined node ids, e.g. "0-1-3".
  std::string to_string() const;
};

/// Sum of the k-th weight over the path's edges. Throws std::out_of_range for
/// k >= K and std::invalid_argument if the path does not belong to `net`.
double path_weight(const WeightedNetwork& net, const RoutePath& path, std::size_t k);

/// max_k w_k(p) / W_k; 0 for the trivial path.
double path_length(const WeightedNetwork& net, const RoutePath& path, const ConstraintVector& w);

/// True iff w_k(p) <= W_k for every k.
bool is_feasible(const WeightedNetwork& net, const RoutePath& path, const ConstraintVector& w);

/// Network file: "n m K" then m lines "u v w1 ... wK". Errors are ParseError
/// carrying the 1-based line number.
WeightedNetwork parse_network(std::string_view text);
std::string emit_network(const WeightedNetwork& net);

}  // namespace gridqos

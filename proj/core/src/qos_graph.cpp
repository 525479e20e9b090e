#include "gridqos/qos_graph.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gridqos/text_format.hpp"

namespace gridqos {

WeightedNetwork::WeightedNetwork(std::size_t node_count, std::size_t metric_count,
                                 std::vector<Edge> edges)
    : node_count_(node_count), metric_count_(metric_count), edges_(std::move(edges)) {
  if (metric_count_ < 1) throw std::invalid_argument("network needs at least one metric");
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.source >= node_count_ || e.target >= node_count_) {
      throw std::invalid_argument(fmt::format("edge {} references a node outside [0, {})", i, node_count_));
    }
    if (e.source == e.target) throw std::invalid_argument(fmt::format("edge {} is a self-loop", i));
    if (e.weights.size() != metric_count_) {
      throw std::invalid_argument(
          fmt::format("edge {} has {} weights, expected {}", i, e.weights.size(), metric_count_));
    }
    for (double w : e.weights) {
      if (!std::isfinite(w) || w < 0.0) {
        throw std::invalid_argument(fmt::format("edge {} has an invalid weight {}", i, w));
      }
    }
  }

  // Compressed adjacency, edges of a node in file order.
  out_offsets_.assign(node_count_ + 1, 0);
  for (const Edge& e : edges_) ++out_offsets_[e.source + 1];
  for (std::size_t v = 0; v < node_count_; ++v) out_offsets_[v + 1] += out_offsets_[v];
  out_index_.resize(edges_.size());
  std::vector<std::size_t> cursor(out_offsets_.begin(), out_offsets_.end() - 1);
  for (std::size_t i = 0; i < edges_.size(); ++i) out_index_[cursor[edges_[i].source]++] = i;
}

WeightedNetwork WeightedNetwork::from_undirected(std::size_t node_count, std::size_t metric_count,
                                                 const std::vector<Edge>& edges) {
  std::vector<Edge> arcs;
  arcs.reserve(2 * edges.size());
  for (const Edge& e : edges) {
    arcs.push_back(e);
    arcs.push_back({e.target, e.source, e.weights});
  }
  return WeightedNetwork(node_count, metric_count, std::move(arcs));
}

std::span<const std::size_t> WeightedNetwork::out_edges(NodeId node) const {
  if (node >= node_count_) throw std::out_of_range(fmt::format("node {} out of range", node));
  return std::span<const std::size_t>(out_index_).subspan(
      out_offsets_[node], out_offsets_[node + 1] - out_offsets_[node]);
}

ConstraintVector::ConstraintVector(std::vector<double> bounds) : bounds_(std::move(bounds)) {
  if (bounds_.empty()) throw std::invalid_argument("constraint vector is empty");
  for (double w : bounds_) {
    if (!std::isfinite(w) || !(w > 0.0)) {
      throw std::invalid_argument(fmt::format("constraint bound {} is not positive", w));
    }
  }
}

ConstraintVector ConstraintVector::scaled(double factor) const {
  std::vector<double> out(bounds_);
  for (double& w : out) w *= factor;
  return ConstraintVector(std::move(out));
}

ConstraintVector parse_constraints(std::string_view text) {
  std::vector<double> bounds;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    std::string_view token = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    const auto value = parse_double(token);
    if (!value || !std::isfinite(*value) || !(*value > 0.0)) {
      throw ParseError(0, fmt::format("constraint '{}' is not a positive number", token));
    }
    bounds.push_back(*value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return ConstraintVector(std::move(bounds));
}

RoutePath RoutePath::from_edges(const WeightedNetwork& net, NodeId source,
                                std::vector<std::size_t> edge_ids) {
  if (source >= net.node_count()) throw std::invalid_argument("path source outside the network");
  RoutePath path;
  path.nodes.push_back(source);
  path.weights.assign(net.metric_count(), 0.0);
  std::vector<bool> seen(net.node_count(), false);
  seen[source] = true;
  for (std::size_t id : edge_ids) {
    if (id >= net.edge_count()) throw std::invalid_argument(fmt::format("edge {} does not exist", id));
    const Edge& e = net.edge(id);
    if (e.source != path.nodes.back()) {
      throw std::invalid_argument(fmt::format("edge {} does not continue the path", id));
    }
    if (seen[e.target]) throw std::invalid_argument("path revisits a node");
    seen[e.target] = true;
    path.nodes.push_back(e.target);
    for (std::size_t k = 0; k < net.metric_count(); ++k) path.weights[k] += e.weights[k];
  }
  path.edges = std::move(edge_ids);
  return path;
}

RoutePath RoutePath::from_nodes(const WeightedNetwork& net, std::vector<NodeId> nodes) {
  if (nodes.empty()) throw std::invalid_argument("path has no nodes");
  std::vector<std::size_t> edge_ids;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (nodes[i] >= net.node_count()) throw std::invalid_argument("path node outside the network");
    const auto out = net.out_edges(nodes[i]);
    auto it = std::find_if(out.begin(), out.end(),
                           [&](std::size_t id) { return net.edge(id).target == nodes[i + 1]; });
    if (it == out.end()) {
      throw std::invalid_argument(fmt::format("no edge {} -> {}", nodes[i], nodes[i + 1]));
    }
    edge_ids.push_back(*it);
  }
  return from_edges(net, nodes.front(), std::move(edge_ids));
}

std::string RoutePath::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(nodes[i]);
  }
  return out;
}

namespace {

// Recomputes the path against `net` so a path from another network is caught.
std::vector<double> checked_weights(const WeightedNetwork& net, const RoutePath& path) {
  if (path.nodes.size() != path.edges.size() + 1) throw std::invalid_argument("malformed path");
  return RoutePath::from_edges(net, path.nodes.front(), path.edges).weights;
}

void check_arity(const WeightedNetwork& net, const ConstraintVector& w) {
  if (w.size() != net.metric_count()) {
    throw std::invalid_argument(fmt::format("constraint vector has {} bounds but the network has {} metrics",
                                            w.size(), net.metric_count()));
  }
}

}  // namespace

double path_weight(const WeightedNetwork& net, const RoutePath& path, std::size_t k) {
  if (k >= net.metric_count()) throw std::out_of_range(fmt::format("metric index {} out of range", k));
  return checked_weights(net, path)[k];
}

double path_length(const WeightedNetwork& net, const RoutePath& path, const ConstraintVector& w) {
  check_arity(net, w);
  const auto weights = checked_weights(net, path);
  double length = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) length = std::max(length, weights[k] / w[k]);
  return length;
}

bool is_feasible(const WeightedNetwork& net, const RoutePath& path, const ConstraintVector& w) {
  check_arity(net, w);
  const auto weights = checked_weights(net, path);
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] > w[k]) return false;
  }
  return true;
}

WeightedNetwork parse_network(std::string_view text) {
  const auto lines = split_lines(text);
  std::size_t line_no = 0;
  auto next_content_line = [&]() -> std::vector<std::string_view> {
    while (line_no < lines.size()) {
      auto tokens = split_whitespace(lines[line_no++]);
      if (!tokens.empty()) return tokens;
    }
    return {};
  };

  const auto header = next_content_line();
  if (header.size() != 3) throw ParseError(std::max<std::size_t>(line_no, 1), "header must be \"n m K\"");
  const auto n = parse_integer(header[0]);
  const auto m = parse_integer(header[1]);
  const auto k = parse_integer(header[2]);
  if (!n || *n < 0) throw ParseError(line_no, "node count must be a nonnegative integer");
  if (!m || *m < 0) throw ParseError(line_no, "edge count must be a nonnegative integer");
  if (!k || *k < 1) throw ParseError(line_no, "metric count must be a positive integer");
  if (*n > static_cast<long long>(UINT32_MAX)) throw ParseError(line_no, "node count too large");

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(*m));
  for (long long i = 0; i < *m; ++i) {
    const auto tokens = next_content_line();
    if (tokens.empty()) {
      throw ParseError(line_no + 1, fmt::format("expected {} edges, found {}", *m, i));
    }
    if (tokens.size() != static_cast<std::size_t>(*k) + 2) {
      throw ParseError(line_no, fmt::format("edge line has {} fields, expected {}", tokens.size(), *k + 2));
    }
    Edge e;
    for (int end = 0; end < 2; ++end) {
      const auto id = parse_integer(tokens[static_cast<std::size_t>(end)]);
      if (!id || *id < 0 || *id >= *n) {
        throw ParseError(line_no, fmt::format("node id '{}' outside [0, {})", tokens[static_cast<std::size_t>(end)], *n));
      }
      (end == 0 ? e.source : e.target) = static_cast<NodeId>(*id);
    }
    if (e.source == e.target) throw ParseError(line_no, "self-loop");
    e.weights.reserve(static_cast<std::size_t>(*k));
    for (std::size_t j = 2; j < tokens.size(); ++j) {
      const auto w = parse_double(tokens[j]);
      if (!w || !std::isfinite(*w)) throw ParseError(line_no, fmt::format("weight '{}' is not a finite number", tokens[j]));
      if (*w < 0.0) throw ParseError(line_no, fmt::format("negative weight {}", tokens[j]));
      e.weights.push_back(*w);
    }
    edges.push_back(std::move(e));
  }
  if (!next_content_line().empty()) throw ParseError(line_no, "more edge lines than declared");
  return WeightedNetwork(static_cast<std::size_t>(*n), static_cast<std::size_t>(*k), std::move(edges));
}

std::string emit_network(const WeightedNetwork& net) {
  std::string out = fmt::format("{} {} {}\n", net.node_count(), net.edge_count(), net.metric_count());
  for (const Edge& e : net.edges()) {
    out += fmt::format("{} {}", e.source, e.target);
    for (double w : e.weights) {
      out += ' ';
      out += format_shortest(w);
    }
    out += '\n';
  }
  return out;
}

}  // namespace gridqos

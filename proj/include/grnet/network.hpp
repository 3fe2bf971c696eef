#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "grnet/expression.hpp"

namespace grnet {

enum class NetworkKind { coexpression, bayesian, dependency };

inline const char* kind_name(NetworkKind k) {
  switch (k) {
    case NetworkKind::coexpression: return "coexpression";
    case NetworkKind::bayesian: return "bayesian";
    case NetworkKind::dependency: return "dependency";
  }
  return "coexpression";
}

/// One weighted edge. Endpoints index into Network::nodes.
struct Edge {
  std::size_t source = 0;
  std::size_t target = 0;
  double weight = 0.0;
  bool directed = true;
};

/// A learned gene graph. Coexpression edges are undirected (stored with
/// source < target); the other kinds are directed parent -> child.
struct Network {
  NetworkKind kind = NetworkKind::coexpression;
  std::vector<GeneId> nodes;
  std::vector<Edge> edges;
};

/// Sources of directed edges into `node`, ascending, deduplicated.
inline std::vector<std::size_t> parents_of(const Network& net, std::size_t node) {
  std::vector<std::size_t> out;
  for (const auto& e : net.edges)
    if (e.directed && e.target == node) out.push_back(e.source);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Undirected adjacency of `node`, ascending, deduplicated.
inline std::vector<std::size_t> neighbors_of(const Network& net, std::size_t node) {
  std::vector<std::size_t> out;
  for (const auto& e : net.edges) {
    if (e.source == node) out.push_back(e.target);
    if (e.target == node) out.push_back(e.source);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Structural invariant check. min_abs_weight applies to coexpression edges
/// (the learning threshold); max_in_degree applies to dependency networks
/// (the parent cap). Empty result means the network is well formed.
inline std::vector<std::string> validate_network(const Network& net,
                                                 std::optional<double> min_abs_weight = {},
                                                 std::optional<std::size_t> max_in_degree = {}) {
  std::vector<std::string> findings;
  const std::size_t n = net.nodes.size();

  std::vector<std::size_t> in_degree(n, 0);
  for (std::size_t idx = 0; idx < net.edges.size(); ++idx) {
    const Edge& e = net.edges[idx];
    const std::string where = "edge " + std::to_string(idx);
    if (e.source >= n || e.target >= n) {
      findings.push_back(where + ": endpoint out of range");
      continue;
    }
    if (e.source == e.target) findings.push_back(where + ": self loop");
    if (!std::isfinite(e.weight)) findings.push_back(where + ": non-finite weight");

    if (net.kind == NetworkKind::coexpression) {
      if (e.directed) findings.push_back(where + ": directed edge in coexpression network");
      if (min_abs_weight && std::abs(e.weight) < *min_abs_weight)
        findings.push_back(where + ": |weight| below learning threshold");
    } else {
      if (!e.directed) findings.push_back(where + ": undirected edge in directed network");
      if (e.target < n) ++in_degree[e.target];
    }
  }

  if (net.kind == NetworkKind::bayesian) {
    for (std::size_t v = 0; v < n; ++v)
      if (in_degree[v] > 1)
        findings.push_back("node " + std::to_string(v) + ": in-degree " +
                           std::to_string(in_degree[v]) + " > 1");
  }
  if (net.kind == NetworkKind::dependency && max_in_degree) {
    for (std::size_t v = 0; v < n; ++v)
      if (in_degree[v] > *max_in_degree)
        findings.push_back("node " + std::to_string(v) + ": in-degree " +
                           std::to_string(in_degree[v]) + " > " +
                           std::to_string(*max_in_degree));
  }
  return findings;
}

/// Directed cycles of a network whose nodes have at most one parent each
/// (the single-parent learner can emit cycles; acyclicity is not enforced).
/// Each cycle is reported once, rotated so its smallest node index leads.
inline std::vector<std::vector<std::size_t>> directed_cycles(const Network& net) {
  const std::size_t n = net.nodes.size();
  std::vector<std::optional<std::size_t>> parent(n);
  for (const auto& e : net.edges)
    if (e.directed && e.target < n && !parent[e.target]) parent[e.target] = e.source;

  // 0 = unvisited, 1 = on the current walk, 2 = finished
  std::vector<int> state(n, 0);
  std::vector<std::vector<std::size_t>> cycles;
  for (std::size_t start = 0; start < n; ++start) {
    if (state[start] != 0) continue;
    std::vector<std::size_t> walk;
    std::size_t v = start;
    while (state[v] == 0) {
      state[v] = 1;
      walk.push_back(v);
      if (!parent[v]) break;
      v = *parent[v];
    }
    if (state[v] == 1 && parent[walk.back()]) {
      // Walk ran into itself: the tail from v onward is a cycle.
      auto it = std::find(walk.begin(), walk.end(), v);
      std::vector<std::size_t> cyc(it, walk.end());
      auto mn = std::min_element(cyc.begin(), cyc.end());
      std::rotate(cyc.begin(), mn, cyc.end());
      cycles.push_back(std::move(cyc));
    }
    for (std::size_t u : walk) state[u] = 2;
  }
  return cycles;
}

}  // namespace grnet

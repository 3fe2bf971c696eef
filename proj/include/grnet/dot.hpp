#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <string>
#include <vector>

#include "grnet/network.hpp"
#include "grnet/numfmt.hpp"

namespace grnet {

namespace detail {

inline bool dot_keyword(const std::string& s) {
  static constexpr std::array<const char*, 6> kw = {"graph", "digraph", "node",
                                                    "edge",  "subgraph", "strict"};
  std::string lower;
  lower.reserve(s.size());
  for (char c : s) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return std::find(kw.begin(), kw.end(), lower) != kw.end();
}

/// Quotes an identifier unless it is a bare DOT name: [A-Za-z_][A-Za-z0-9_]*
/// and not a keyword.
inline std::string dot_id(const std::string& s) {
  bool bare = !s.empty() && !dot_keyword(s);
  for (std::size_t i = 0; bare && i < s.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    bare = c == '_' || std::isalpha(c) || (i > 0 && std::isdigit(c));
  }
  if (bare) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

/// Renders a network as DOT: node statements in gene-index order, then edge
/// statements sorted by (source, target) with undirected pairs normalized to
/// source < target. Each edge carries its weight (6 significant digits) and a
/// penwidth of 1 + 4·min(1, |weight|), echoing line thickness as edge
/// strength. Output is byte-deterministic.
inline std::string export_dot(const Network& net) {
  const bool undirected = net.kind == NetworkKind::coexpression;
  std::string out = undirected ? "graph " : "digraph ";
  out += kind_name(net.kind);
  out += " {\n";
  for (const auto& node : net.nodes) {
    out += "  ";
    out += detail::dot_id(node.name);
    out += ";\n";
  }

  std::vector<Edge> edges = net.edges;
  if (undirected)
    for (auto& e : edges)
      if (e.source > e.target) std::swap(e.source, e.target);
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.source != b.source ? a.source < b.source : a.target < b.target;
  });

  for (const auto& e : edges) {
    const double penwidth = 1.0 + 4.0 * std::min(1.0, std::abs(e.weight));
    out += "  ";
    out += detail::dot_id(net.nodes[e.source].name);
    out += undirected ? " -- " : " -> ";
    out += detail::dot_id(net.nodes[e.target].name);
    out += " [weight=\"";
    out += detail::sig6_full(e.weight);
    out += "\", penwidth=";
    out += detail::sig6_full(penwidth);
    out += "];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace grnet

#pragma once

#include <cstddef>
#include <string>

#include <json.hpp>

#include "grnet/errors.hpp"
#include "grnet/network.hpp"
#include "grnet/selection.hpp"

namespace grnet {

/// Canonical network JSON: {"kind", "nodes", "edges"} in that order, nodes as
/// names in index order, edges as index pairs sorted by (source, target).
/// Compact dump, shortest round-trip numbers, no trailing newline — the text
/// is the canonical form, byte-comparable.
inline std::string export_network_json(const Network& net) {
  nlohmann::ordered_json j;
  j["kind"] = kind_name(net.kind);
  j["nodes"] = nlohmann::ordered_json::array();
  for (const auto& node : net.nodes) j["nodes"].push_back(node.name);
  j["edges"] = nlohmann::ordered_json::array();

  std::vector<Edge> edges = net.edges;
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.source != b.source ? a.source < b.source : a.target < b.target;
  });
  for (const auto& e : edges) {
    nlohmann::ordered_json je;
    je["source"] = e.source;
    je["target"] = e.target;
    je["weight"] = e.weight;
    je["directed"] = e.directed;
    j["edges"].push_back(std::move(je));
  }
  return j.dump();
}

/// Inverse of export_network_json. Structural problems surface as
/// validation_error; malformed JSON as parse_error with no coordinates.
inline Network import_network_json(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(0, 0, std::string("json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j.contains("nodes") || !j.contains("edges"))
    throw validation_error("network json: expected object with kind, nodes, edges");

  Network net;
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "coexpression") {
    net.kind = NetworkKind::coexpression;
  } else if (kind == "bayesian") {
    net.kind = NetworkKind::bayesian;
  } else if (kind == "dependency") {
    net.kind = NetworkKind::dependency;
  } else {
    throw validation_error("network json: unknown kind \"" + kind + "\"");
  }

  if (!j["nodes"].is_array() || !j["edges"].is_array())
    throw validation_error("network json: nodes and edges must be arrays");
  for (const auto& name : j["nodes"])
    net.nodes.push_back(GeneId{net.nodes.size(), name.get<std::string>()});
  for (const auto& je : j["edges"]) {
    if (!je.is_object() || !je.contains("source") || !je.contains("target") ||
        !je.contains("weight") || !je.contains("directed"))
      throw validation_error("network json: edge needs source, target, weight, directed");
    Edge e;
    e.source = je["source"].get<std::size_t>();
    e.target = je["target"].get<std::size_t>();
    e.weight = je["weight"].get<double>();
    e.directed = je["directed"].get<bool>();
    if (e.source >= net.nodes.size() || e.target >= net.nodes.size())
      throw validation_error("network json: edge endpoint out of range");
    net.edges.push_back(e);
  }
  return net;
}

/// One strategy's full ensemble outcome as indented JSON: config, label,
/// overall error, and every per-target search with its trace. Gene references
/// are names.
inline std::string export_selection_json(const EnsembleRun& run, const StrategyConfig& cfg) {
  nlohmann::ordered_json j;
  j["strategy"]["search"] = search_name(cfg.search);
  j["strategy"]["ordering"] = ordering_name(cfg.ordering);
  j["strategy"]["threshold"] = cfg.threshold;
  j["strategy"]["absolute"] = cfg.use_absolute_r;
  j["strategy"]["metric"] = metric_name(cfg.metric);
  if (cfg.max_subset)
    j["strategy"]["max_subset"] = *cfg.max_subset;
  else
    j["strategy"]["max_subset"] = nullptr;
  j["label"] = strategy_label(cfg);
  j["overall"] = run.overall;

  j["targets"] = nlohmann::ordered_json::array();
  for (const auto& res : run.per_target) {
    nlohmann::ordered_json jt;
    jt["target"] = res.target.name;
    jt["candidates"] = nlohmann::ordered_json::array();
    for (const auto& g : res.candidates) jt["candidates"].push_back(g.name);
    jt["selected"] = nlohmann::ordered_json::array();
    for (const auto& g : res.selected) jt["selected"].push_back(g.name);
    jt["error"] = res.error.value;
    jt["metric"] = metric_name(res.error.metric);
    jt["folds"] = res.error.folds;
    jt["trace"] = nlohmann::ordered_json::array();
    for (const auto& t : res.trace) {
      nlohmann::ordered_json js;
      js["step"] = t.step;
      if (t.gene)
        js["gene"] = t.gene->name;
      else
        js["gene"] = nullptr;
      js["action"] = trace_action_name(t.action);
      js["error_after"] = t.error_after;
      jt["trace"].push_back(std::move(js));
    }
    j["targets"].push_back(std::move(jt));
  }
  return j.dump(2) + "\n";
}

}  // namespace grnet

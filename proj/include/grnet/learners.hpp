#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "grnet/expression.hpp"
#include "grnet/network.hpp"
#include "grnet/regression.hpp"

namespace grnet {

/// Undirected network connecting gene pairs whose correlation statistic
/// (|r| by default, signed r when absolute = false) reaches the threshold.
/// Edge weight is the signed correlation either way. Constant genes stay
/// isolated. Edges come out sorted by (source, target), source < target.
inline Network learn_coexpression(const ExpressionMatrix& m, double threshold,
                                  bool absolute = true) {
  if (!(threshold > 0.0 && threshold <= 1.0))
    throw std::invalid_argument("threshold must be in (0,1]");
  const CorrelationMatrix corr = correlation_matrix(m);

  Network net;
  net.kind = NetworkKind::coexpression;
  net.nodes = m.gene_ids();
  for (std::size_t i = 0; i < m.p(); ++i) {
    if (corr.constant_gene[i]) continue;
    for (std::size_t j = i + 1; j < m.p(); ++j) {
      if (corr.constant_gene[j]) continue;
      const double r = corr.r(i, j);
      const double stat = absolute ? std::abs(r) : r;
      if (stat >= threshold) net.edges.push_back({i, j, r, false});
    }
  }
  return net;
}

/// Single-parent directed network: each gene gets the one regressor whose
/// simple regression leaves the smallest residual sum of squares, ties going
/// to the lower gene index. Edge weight is that regression's slope. The
/// structure may contain cycles; constant genes take no part on either side.
inline Network learn_bayesian(const ExpressionMatrix& m) {
  const std::size_t p = m.p();
  if (p < 2) throw no_candidates("learn_bayesian: need at least 2 genes");
  std::vector<bool> constant(p);
  for (std::size_t j = 0; j < p; ++j) constant[j] = detail::is_constant(m.column(j));

  Network net;
  net.kind = NetworkKind::bayesian;
  net.nodes = m.gene_ids();
  for (std::size_t t = 0; t < p; ++t) {
    if (constant[t]) continue;
    double best_rss = std::numeric_limits<double>::infinity();
    std::size_t best = p;
    double best_slope = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      if (j == t || constant[j]) continue;
      const RegressionFit fit = fit_simple_lr(m.column(j), m.column(t));
      if (fit.rss < best_rss) {
        best_rss = fit.rss;
        best = j;
        best_slope = fit.coefficients[0];
      }
    }
    if (best < p) net.edges.push_back({best, t, best_slope, true});
  }
  std::sort(net.edges.begin(), net.edges.end(), [](const Edge& a, const Edge& b) {
    return a.source != b.source ? a.source < b.source : a.target < b.target;
  });
  return net;
}

/// Directed network with up to k parents per gene: the k genes most
/// correlated with the target (|r| by default), ties to the lower index,
/// jointly fitted by multiple regression. Edge weights are the fitted
/// coefficients. Constant genes stay isolated.
inline Network learn_dependency(const ExpressionMatrix& m, std::size_t k = 5,
                                bool absolute = true) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  const CorrelationMatrix corr = correlation_matrix(m);
  const std::size_t p = m.p();

  Network net;
  net.kind = NetworkKind::dependency;
  net.nodes = m.gene_ids();
  for (std::size_t t = 0; t < p; ++t) {
    if (corr.constant_gene[t]) continue;
    std::vector<std::size_t> order;
    for (std::size_t j = 0; j < p; ++j)
      if (j != t && !corr.constant_gene[j]) order.push_back(j);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double sa = absolute ? std::abs(corr.r(t, a)) : corr.r(t, a);
      const double sb = absolute ? std::abs(corr.r(t, b)) : corr.r(t, b);
      return sa > sb;
    });
    if (order.size() > k) order.resize(k);
    if (order.empty()) continue;
    std::sort(order.begin(), order.end());

    std::vector<GeneId> parents;
    parents.reserve(order.size());
    for (std::size_t j : order) parents.push_back(m.gene(j));
    const RegressionFit fit = fit_gene_mlr(m, m.gene(t), parents);
    for (std::size_t i = 0; i < order.size(); ++i)
      net.edges.push_back({order[i], t, fit.coefficients[i], true});
  }
  std::sort(net.edges.begin(), net.edges.end(), [](const Edge& a, const Edge& b) {
    return a.source != b.source ? a.source < b.source : a.target < b.target;
  });
  return net;
}

/// Predictive quality of a learned structure: per-gene LOOCV error with the
/// gene's parents (neighbors for co-expression) as regressors, and their
/// plain mean. A gene with no predictors is scored on the intercept-only
/// model, so isolated genes still count toward the mean.
struct NetworkEvaluation {
  NetworkKind kind = NetworkKind::coexpression;
  Metric metric = Metric::mse;
  std::vector<GeneId> genes;
  std::vector<double> per_gene;
  double overall = 0.0;
};

inline NetworkEvaluation evaluate_network(const ExpressionMatrix& m, const Network& net,
                                          Metric metric = Metric::mse) {
  if (net.nodes.size() != m.p())
    throw validation_error("evaluate_network: network has " + std::to_string(net.nodes.size()) +
                           " node(s) but the matrix has " + std::to_string(m.p()) + " gene(s)");
  for (std::size_t i = 0; i < net.nodes.size(); ++i)
    detail::check_gene_in_matrix(m, net.nodes[i], "node");

  NetworkEvaluation eval;
  eval.kind = net.kind;
  eval.metric = metric;
  eval.genes = m.gene_ids();
  eval.per_gene.reserve(m.p());
  double sum = 0.0;
  for (std::size_t t = 0; t < m.p(); ++t) {
    const std::vector<std::size_t> pred = net.kind == NetworkKind::coexpression
                                              ? neighbors_of(net, t)
                                              : parents_of(net, t);
    std::vector<GeneId> parents;
    parents.reserve(pred.size());
    for (std::size_t j : pred) parents.push_back(m.gene(j));
    const double err = loocv_error(m, m.gene(t), parents, metric).value;
    eval.per_gene.push_back(err);
    sum += err;
  }
  eval.overall = sum / static_cast<double>(m.p());
  return eval;
}

/// Report row label for one model class.
inline std::string model_label(NetworkKind kind) {
  switch (kind) {
    case NetworkKind::coexpression: return "Co-expression network";
    case NetworkKind::bayesian: return "Bayesian network";
    case NetworkKind::dependency: return "Dependency network";
  }
  return "Co-expression network";
}

}  // namespace grnet

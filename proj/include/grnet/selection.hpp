#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "grnet/expression.hpp"
#include "grnet/regression.hpp"

namespace grnet {

enum class SearchMethod { sfs, sbe };
enum class CandidateOrdering { highest_first, lowest_first, unordered };

inline const char* search_name(SearchMethod s) { return s == SearchMethod::sfs ? "sfs" : "sbe"; }

inline const char* ordering_name(CandidateOrdering o) {
  switch (o) {
    case CandidateOrdering::highest_first: return "highest";
    case CandidateOrdering::lowest_first: return "lowest";
    case CandidateOrdering::unordered: return "unordered";
  }
  return "highest";
}

/// One strategy of the ensemble: correlation filter + greedy wrapper search.
/// The filter statistic is |r| by default; `use_absolute_r = false` switches
/// to signed r for both the threshold test and the ordering.
struct StrategyConfig {
  SearchMethod search = SearchMethod::sfs;
  CandidateOrdering ordering = CandidateOrdering::highest_first;
  double threshold = 0.5;
  bool use_absolute_r = true;
  Metric metric = Metric::mse;
  std::optional<std::size_t> max_subset;  // unset: n - 2

  /// Subset-size cap. The default n - 2 keeps every LOOCV training fold
  /// strictly overdetermined for the regression fit.
  std::size_t effective_max_subset(std::size_t n) const {
    if (max_subset) return *max_subset;
    return n > 2 ? n - 2 : 0;
  }
};

inline void check_strategy_config(const StrategyConfig& cfg) {
  if (!(cfg.threshold > 0.0 && cfg.threshold <= 1.0))
    throw std::invalid_argument("threshold must be in (0,1]");
}

enum class TraceAction { add, remove, stop };

inline const char* trace_action_name(TraceAction a) {
  switch (a) {
    case TraceAction::add: return "add";
    case TraceAction::remove: return "remove";
    case TraceAction::stop: return "stop";
  }
  return "stop";
}

/// One search event. Entry 0 always records the adopted starting set (empty
/// for forward selection, the capped candidate prefix for backward
/// elimination) with no gene attached; the final entry is always a stop.
struct TraceEntry {
  std::size_t step = 0;
  std::optional<GeneId> gene;
  TraceAction action = TraceAction::stop;
  double error_after = 0.0;
};

/// Outcome of one per-target search.
struct SelectionResult {
  GeneId target;
  std::vector<GeneId> candidates;
  std::vector<GeneId> selected;
  LoocvError error;
  std::vector<TraceEntry> trace;
};

/// All per-target searches of one strategy plus their mean error.
struct EnsembleRun {
  std::vector<SelectionResult> per_target;
  double overall = 0.0;
};

/// Improvement must beat this margin to count; ties land within it.
inline constexpr double kSearchTol = 1e-12;

namespace detail {

struct RankedCandidate {
  std::size_t index = 0;
  double stat = 0.0;
};

/// Collects genes whose filter statistic passes the threshold and orders
/// them per the strategy. stat_of returns nullopt for unusable pairs
/// (constant gene involved). Ties break toward the lower gene index.
template <typename StatFn>
std::vector<RankedCandidate> ranked_candidates(std::size_t p, std::size_t target,
                                               const StrategyConfig& cfg, StatFn&& stat_of) {
  std::vector<RankedCandidate> out;
  for (std::size_t j = 0; j < p; ++j) {
    if (j == target) continue;
    const std::optional<double> stat = stat_of(j);
    if (stat && *stat >= cfg.threshold) out.push_back({j, *stat});
  }
  if (cfg.ordering == CandidateOrdering::highest_first) {
    std::stable_sort(out.begin(), out.end(),
                     [](const RankedCandidate& a, const RankedCandidate& b) {
                       return a.stat > b.stat;
                     });
  } else if (cfg.ordering == CandidateOrdering::lowest_first) {
    std::stable_sort(out.begin(), out.end(),
                     [](const RankedCandidate& a, const RankedCandidate& b) {
                       return a.stat < b.stat;
                     });
  }
  return out;
}

inline void check_candidates(const ExpressionMatrix& m, const GeneId& target,
                             const std::vector<GeneId>& candidates) {
  check_gene_in_matrix(m, target, "target");
  for (const auto& c : candidates) {
    check_gene_in_matrix(m, c, "candidate");
    if (c.index == target.index)
      throw target_in_candidates("search: target gene " + std::to_string(target.index) +
                                 " appears in its own candidate list");
  }
}

}  // namespace detail

/// Genes correlated with `target` at or above the threshold, ordered per the
/// strategy. Pairs involving a constant gene never pass. An empty result is
/// legal and leaves the target with the intercept-only model.
inline std::vector<GeneId> filter_candidates(const ExpressionMatrix& m, const GeneId& target,
                                             const StrategyConfig& cfg) {
  check_strategy_config(cfg);
  detail::check_gene_in_matrix(m, target, "target");

  const bool target_const = detail::is_constant(m.column(target.index));
  const auto stat_of = [&](std::size_t j) -> std::optional<double> {
    if (target_const || detail::is_constant(m.column(j))) return std::nullopt;
    const double r = pearson_correlation(m.column(target.index), m.column(j));
    return cfg.use_absolute_r ? std::abs(r) : r;
  };
  const auto ranked = detail::ranked_candidates(m.p(), target.index, cfg, stat_of);

  std::vector<GeneId> out;
  out.reserve(ranked.size());
  for (const auto& rc : ranked) out.push_back(m.gene(rc.index));
  return out;
}

/// Sequential forward selection. Scans the candidates in their given order;
/// a candidate is kept iff adding it drops the LOOCV error by more than
/// kSearchTol. The first rejected candidate stops the search, as does
/// reaching the subset cap or exhausting the list.
inline SelectionResult sfs(const ExpressionMatrix& m, const GeneId& target,
                           const std::vector<GeneId>& candidates, const StrategyConfig& cfg) {
  check_strategy_config(cfg);
  detail::check_candidates(m, target, candidates);

  const std::size_t cap = cfg.effective_max_subset(m.n());
  SelectionResult res;
  res.target = target;
  res.candidates = candidates;

  double cur = loocv_error(m, target, {}, cfg.metric).value;
  res.trace.push_back({0, std::nullopt, TraceAction::add, cur});

  bool stopped = false;
  for (const auto& cand : candidates) {
    if (res.selected.size() >= cap) {
      res.trace.push_back({res.trace.size(), std::nullopt, TraceAction::stop, cur});
      stopped = true;
      break;
    }
    std::vector<GeneId> tentative = res.selected;
    tentative.push_back(cand);
    const double err = loocv_error(m, target, tentative, cfg.metric).value;
    if (err < cur - kSearchTol) {
      res.selected = std::move(tentative);
      cur = err;
      res.trace.push_back({res.trace.size(), cand, TraceAction::add, cur});
    } else {
      res.trace.push_back({res.trace.size(), cand, TraceAction::stop, cur});
      stopped = true;
      break;
    }
  }
  if (!stopped) res.trace.push_back({res.trace.size(), std::nullopt, TraceAction::stop, cur});

  res.error = LoocvError{cur, cfg.metric, m.n()};
  return res;
}

/// Sequential backward elimination. Starts from the first
/// min(|candidates|, max_subset) candidates, then repeatedly sweeps the
/// working set in candidate order, dropping any gene whose removal does not
/// raise the LOOCV error (improvement or tie, within kSearchTol). Stops after
/// a full sweep with no removal.
inline SelectionResult sbe(const ExpressionMatrix& m, const GeneId& target,
                           const std::vector<GeneId>& candidates, const StrategyConfig& cfg) {
  check_strategy_config(cfg);
  detail::check_candidates(m, target, candidates);

  const std::size_t cap = cfg.effective_max_subset(m.n());
  SelectionResult res;
  res.target = target;
  res.candidates = candidates;

  const std::size_t start = std::min(candidates.size(), cap);
  res.selected.assign(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(start));

  double cur = loocv_error(m, target, res.selected, cfg.metric).value;
  res.trace.push_back({0, std::nullopt, TraceAction::add, cur});

  bool changed = true;
  while (changed) {
    changed = false;
    const std::vector<GeneId> sweep = res.selected;
    for (const auto& gene : sweep) {
      const auto it = std::find(res.selected.begin(), res.selected.end(), gene);
      if (it == res.selected.end()) continue;
      std::vector<GeneId> tentative = res.selected;
      tentative.erase(tentative.begin() + (it - res.selected.begin()));
      const double err = loocv_error(m, target, tentative, cfg.metric).value;
      if (err <= cur + kSearchTol) {
        res.selected = std::move(tentative);
        cur = err;
        res.trace.push_back({res.trace.size(), gene, TraceAction::remove, cur});
        changed = true;
      }
    }
  }
  res.trace.push_back({res.trace.size(), std::nullopt, TraceAction::stop, cur});

  res.error = LoocvError{cur, cfg.metric, m.n()};
  return res;
}

/// Runs one strategy with every gene as target once. The overall error is the
/// mean of the per-target LOOCV errors in gene-index order; targets with an
/// empty candidate list contribute their intercept-only error.
inline EnsembleRun run_ensemble(const ExpressionMatrix& m, const StrategyConfig& cfg) {
  check_strategy_config(cfg);
  const CorrelationMatrix corr = correlation_matrix(m);
  const std::size_t p = m.p();

  EnsembleRun run;
  run.per_target.reserve(p);
  double sum = 0.0;
  for (std::size_t t = 0; t < p; ++t) {
    const auto stat_of = [&](std::size_t j) -> std::optional<double> {
      if (corr.constant_gene[t] || corr.constant_gene[j]) return std::nullopt;
      const double r = corr.r(t, j);
      return cfg.use_absolute_r ? std::abs(r) : r;
    };
    const auto ranked = detail::ranked_candidates(p, t, cfg, stat_of);
    std::vector<GeneId> candidates;
    candidates.reserve(ranked.size());
    for (const auto& rc : ranked) candidates.push_back(m.gene(rc.index));

    SelectionResult res = cfg.search == SearchMethod::sfs ? sfs(m, m.gene(t), candidates, cfg)
                                                          : sbe(m, m.gene(t), candidates, cfg);
    sum += res.error.value;
    run.per_target.push_back(std::move(res));
  }
  run.overall = sum / static_cast<double>(p);
  return run;
}

/// Report row label for one strategy.
inline std::string strategy_label(const StrategyConfig& cfg) {
  std::string label = "Ensemble method –";
  label += cfg.search == SearchMethod::sfs ? "SFS" : "SBE";
  switch (cfg.ordering) {
    case CandidateOrdering::highest_first: label += " (highest)"; break;
    case CandidateOrdering::lowest_first: label += " (lowest)"; break;
    case CandidateOrdering::unordered: label += " (without ordering)"; break;
  }
  return label;
}

/// Short machine-friendly slug for file names.
inline std::string strategy_slug(const StrategyConfig& cfg) {
  return std::string(search_name(cfg.search)) + "_" + ordering_name(cfg.ordering);
}

/// The six strategy rows in their canonical report order.
inline std::array<StrategyConfig, 6> all_strategies(StrategyConfig base) {
  std::array<StrategyConfig, 6> out;
  out.fill(base);
  out[0].search = SearchMethod::sfs;
  out[0].ordering = CandidateOrdering::highest_first;
  out[1].search = SearchMethod::sfs;
  out[1].ordering = CandidateOrdering::lowest_first;
  out[2].search = SearchMethod::sfs;
  out[2].ordering = CandidateOrdering::unordered;
  out[3].search = SearchMethod::sbe;
  out[3].ordering = CandidateOrdering::lowest_first;
  out[4].search = SearchMethod::sbe;
  out[4].ordering = CandidateOrdering::highest_first;
  out[5].search = SearchMethod::sbe;
  out[5].ordering = CandidateOrdering::unordered;
  return out;
}

}  // namespace grnet

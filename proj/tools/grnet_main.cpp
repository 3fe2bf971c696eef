// grnet: correlation, feature-selection, and network-learning pipelines over
// gene-expression CSVs.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grnet/grnet.hpp"

namespace {

struct InputOpts {
  std::string path;
  std::string delimiter = ",";
  bool no_sample_column = false;
};

void add_input_opts(CLI::App* cmd, InputOpts& in) {
  cmd->add_option("input", in.path, "expression CSV, or - for standard input")->required();
  cmd->add_option("--delimiter", in.delimiter, "field delimiter (single character)")
      ->capture_default_str();
  cmd->add_flag("--no-sample-column", in.no_sample_column,
                "first column is data, not sample ids");
}

grnet::ExpressionMatrix load_input(const InputOpts& in) {
  if (in.delimiter.size() != 1)
    throw std::invalid_argument("delimiter must be a single character");
  const grnet::CsvSpec spec{in.delimiter[0], !in.no_sample_column};
  if (in.path == "-") return grnet::load_matrix_csv(std::cin, spec);
  return grnet::load_matrix_csv_file(in.path, spec);
}

std::string dataset_name(const std::string& path) {
  if (path == "-") return "stdin";
  const std::string stem = std::filesystem::path(path).stem().string();
  return stem.empty() ? path : stem;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw grnet::error("cannot open file for writing: " + path);
  out << text;
}

/// out.dot + "bayesian" -> out.bayesian.dot
std::string suffixed_path(const std::string& path, const std::string& tag) {
  const std::filesystem::path p(path);
  std::filesystem::path out = p.parent_path();
  out /= p.stem().string() + "." + tag + p.extension().string();
  return out.string();
}

void check_threshold(double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0))
    throw std::invalid_argument("threshold must be in (0,1]");
}

struct CorrelateOpts {
  InputOpts in;
  double threshold = 0.5;
  bool absolute = true;
  bool signed_stat = false;
  std::string out;
};

int run_correlate(const CorrelateOpts& opt) {
  check_threshold(opt.threshold);
  const grnet::ExpressionMatrix m = load_input(opt.in);
  const grnet::CorrelationMatrix corr = grnet::correlation_matrix(m);

  std::ostringstream csv;
  grnet::write_correlation_csv(csv, corr);
  if (opt.out.empty())
    std::cout << csv.str();
  else
    write_text_file(opt.out, csv.str());

  const bool absolute = !opt.signed_stat;
  std::size_t count = 0;
  for (std::size_t i = 0; i < m.p(); ++i) {
    if (corr.constant_gene[i]) continue;
    for (std::size_t j = i + 1; j < m.p(); ++j) {
      if (corr.constant_gene[j]) continue;
      const double stat = absolute ? std::abs(corr.r(i, j)) : corr.r(i, j);
      if (stat >= opt.threshold) ++count;
    }
  }
  std::cout << count << (count == 1 ? " pair ≥ " : " pairs ≥ ")
            << grnet::detail::round_trip(opt.threshold) << "\n";
  return 0;
}

struct SelectOpts {
  InputOpts in;
  grnet::StrategyConfig base;
  bool all_strategies = false;
  bool signed_stat = false;
  long long max_subset = -1;
  std::string out_dir;
};

int run_select(const SelectOpts& opt) {
  grnet::StrategyConfig base = opt.base;
  base.use_absolute_r = !opt.signed_stat;
  if (opt.max_subset >= 0) base.max_subset = static_cast<std::size_t>(opt.max_subset);
  grnet::check_strategy_config(base);
  const grnet::ExpressionMatrix m = load_input(opt.in);

  std::vector<grnet::StrategyConfig> strategies;
  if (opt.all_strategies) {
    const auto all = grnet::all_strategies(base);
    strategies.assign(all.begin(), all.end());
  } else {
    strategies.push_back(base);
  }

  grnet::ErrorReport report;
  report.label_header = "Strategy";
  report.dataset_names = {dataset_name(opt.in.path)};
  report.metric = base.metric;

  const bool with_files = !opt.out_dir.empty();
  if (with_files) std::filesystem::create_directories(opt.out_dir);
  for (const auto& cfg : strategies) {
    const grnet::EnsembleRun run = grnet::run_ensemble(m, cfg);
    report.rows.push_back({grnet::strategy_label(cfg), {run.overall}});
    if (with_files) {
      const std::filesystem::path p =
          std::filesystem::path(opt.out_dir) / ("selection_" + grnet::strategy_slug(cfg) + ".json");
      write_text_file(p.string(), grnet::export_selection_json(run, cfg));
    }
  }

  const std::string table = grnet::render_error_report(report, grnet::TableFormat::csv);
  std::cout << "metric: " << grnet::metric_name(base.metric) << "\n" << table;
  if (with_files) {
    const std::filesystem::path p = std::filesystem::path(opt.out_dir) / "error_report.csv";
    write_text_file(p.string(), table);
  }
  return 0;
}

struct LearnOpts {
  InputOpts in;
  std::string model;
  double threshold = 0.5;
  std::size_t parents = 5;
  grnet::Metric metric = grnet::Metric::mse;
  std::string dot_path;
  std::string json_path;
  bool evaluate = false;
};

grnet::Network learn_one(const grnet::ExpressionMatrix& m, const std::string& model,
                         const LearnOpts& opt) {
  if (model == "coexpr") return grnet::learn_coexpression(m, opt.threshold);
  if (model == "bayes") return grnet::learn_bayesian(m);
  return grnet::learn_dependency(m, opt.parents);
}

int run_learn(const LearnOpts& opt) {
  if (opt.model == "coexpr" || opt.model == "all") check_threshold(opt.threshold);
  const grnet::ExpressionMatrix m = load_input(opt.in);
  const bool all = opt.model == "all";
  const std::vector<std::string> models =
      all ? std::vector<std::string>{"coexpr", "bayes", "depnet"}
          : std::vector<std::string>{opt.model};

  grnet::ErrorReport report;
  report.label_header = "Model";
  report.dataset_names = {dataset_name(opt.in.path)};
  report.metric = opt.metric;

  for (const auto& model : models) {
    const grnet::Network net = learn_one(m, model, opt);
    std::cout << grnet::kind_name(net.kind) << ": " << net.edges.size()
              << (net.edges.size() == 1 ? " edge" : " edges") << "\n";
    if (model == "bayes") {
      for (const auto& cycle : grnet::directed_cycles(net)) {
        std::cerr << "cycle:";
        for (std::size_t i = 0; i < cycle.size(); ++i)
          std::cerr << (i == 0 ? " " : " -> ") << net.nodes[cycle[i]].name;
        std::cerr << " -> " << net.nodes[cycle.front()].name << "\n";
      }
    }
    if (!opt.dot_path.empty())
      write_text_file(all ? suffixed_path(opt.dot_path, grnet::kind_name(net.kind)) : opt.dot_path,
                      grnet::export_dot(net));
    if (!opt.json_path.empty())
      write_text_file(
          all ? suffixed_path(opt.json_path, grnet::kind_name(net.kind)) : opt.json_path,
          grnet::export_network_json(net));
    if (opt.evaluate) {
      const grnet::NetworkEvaluation eval = grnet::evaluate_network(m, net, opt.metric);
      if (all) {
        report.rows.push_back({grnet::model_label(net.kind), {eval.overall}});
      } else {
        report.rows.clear();
        for (std::size_t g = 0; g < eval.genes.size(); ++g)
          report.rows.push_back({eval.genes[g].name, {eval.per_gene[g]}});
        report.rows.push_back({"overall", {eval.overall}});
        report.label_header = "gene";
      }
    }
  }
  if (opt.evaluate) {
    std::cout << "metric: " << grnet::metric_name(opt.metric) << "\n"
              << grnet::render_error_report(report, grnet::TableFormat::csv);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gene-expression correlation, feature selection, and network learning"};
  app.require_subcommand(1);

  const std::map<std::string, grnet::SearchMethod> search_names{
      {"sfs", grnet::SearchMethod::sfs}, {"sbe", grnet::SearchMethod::sbe}};
  const std::map<std::string, grnet::CandidateOrdering> ordering_names{
      {"highest", grnet::CandidateOrdering::highest_first},
      {"lowest", grnet::CandidateOrdering::lowest_first},
      {"unordered", grnet::CandidateOrdering::unordered}};
  const std::map<std::string, grnet::Metric> metric_names{{"mse", grnet::Metric::mse},
                                                          {"mae", grnet::Metric::mae}};

  CorrelateOpts correlate;
  CLI::App* cmd_correlate =
      app.add_subcommand("correlate", "write the gene correlation matrix and a pair summary");
  add_input_opts(cmd_correlate, correlate.in);
  cmd_correlate->add_option("--threshold", correlate.threshold, "pair-count threshold on (0,1]")
      ->capture_default_str();
  auto* abs_flag = cmd_correlate->add_flag("--absolute", correlate.absolute,
                                           "count pairs by |r| (default)");
  cmd_correlate->add_flag("--signed", correlate.signed_stat, "count pairs by signed r")
      ->excludes(abs_flag);
  cmd_correlate->add_option("--out", correlate.out, "write the matrix CSV here instead of stdout");

  SelectOpts select;
  CLI::App* cmd_select =
      app.add_subcommand("select", "greedy wrapper feature selection over every target gene");
  add_input_opts(cmd_select, select.in);
  cmd_select->add_option("--search", select.base.search, "search method")
      ->transform(CLI::CheckedTransformer(search_names, CLI::ignore_case))
      ->default_str("sfs");
  cmd_select->add_option("--ordering", select.base.ordering, "candidate ordering")
      ->transform(CLI::CheckedTransformer(ordering_names, CLI::ignore_case))
      ->default_str("highest");
  cmd_select->add_option("--threshold", select.base.threshold, "correlation filter on (0,1]")
      ->capture_default_str();
  cmd_select->add_option("--metric", select.base.metric, "cross-validation error metric")
      ->transform(CLI::CheckedTransformer(metric_names, CLI::ignore_case))
      ->default_str("mse");
  cmd_select->add_option("--max-subset", select.max_subset,
                         "subset size cap (default: samples - 2)");
  cmd_select->add_flag("--all-strategies", select.all_strategies,
                       "run all six search/ordering strategies");
  cmd_select->add_flag("--signed", select.signed_stat, "filter and order by signed r, not |r|");
  cmd_select->add_option("--out-dir", select.out_dir,
                         "write per-strategy selection JSON and the error report here");

  LearnOpts learn;
  CLI::App* cmd_learn = app.add_subcommand("learn", "learn a gene network and optionally score it");
  add_input_opts(cmd_learn, learn.in);
  cmd_learn->add_option("--model", learn.model, "network model")
      ->required()
      ->check(CLI::IsMember({"coexpr", "bayes", "depnet", "all"}));
  cmd_learn->add_option("--threshold", learn.threshold, "co-expression threshold on (0,1]")
      ->capture_default_str();
  cmd_learn->add_option("--parents", learn.parents, "dependency-network parents per gene")
      ->capture_default_str();
  cmd_learn->add_option("--metric", learn.metric, "cross-validation error metric")
      ->transform(CLI::CheckedTransformer(metric_names, CLI::ignore_case))
      ->default_str("mse");
  cmd_learn->add_option("--dot", learn.dot_path, "write DOT here (per-model suffix under --model all)");
  cmd_learn->add_option("--json", learn.json_path,
                        "write network JSON here (per-model suffix under --model all)");
  cmd_learn->add_flag("--evaluate", learn.evaluate, "cross-validate the learned structure");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_correlate->parsed()) return run_correlate(correlate);
    if (cmd_select->parsed()) return run_select(select);
    return run_learn(learn);
  } catch (const grnet::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "grnet/numfmt.hpp"
#include "grnet/regression.hpp"

namespace grnet {

/// One labelled row of errors, one column per dataset.
struct ErrorReportRow {
  std::string label;
  std::vector<double> errors;
};

/// Error comparison table: strategies or models down the side, datasets
/// across the top.
struct ErrorReport {
  std::string label_header = "label";
  std::vector<std::string> dataset_names;
  Metric metric = Metric::mse;
  std::vector<ErrorReportRow> rows;
};

enum class TableFormat { csv, markdown };

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

/// Renders the table. CSV is the bare grid; markdown adds a trailing
/// "metric: <name>" line so the measure travels with the prose form.
/// Values print with six significant digits.
inline std::string render_error_report(const ErrorReport& rep, TableFormat format) {
  for (const auto& row : rep.rows)
    if (row.errors.size() != rep.dataset_names.size())
      throw std::invalid_argument("error report row \"" + row.label + "\" has " +
                                  std::to_string(row.errors.size()) + " value(s), expected " +
                                  std::to_string(rep.dataset_names.size()));

  std::string out;
  if (format == TableFormat::csv) {
    out += detail::csv_field(rep.label_header);
    for (const auto& name : rep.dataset_names) {
      out += ',';
      out += detail::csv_field(name);
    }
    out += '\n';
    for (const auto& row : rep.rows) {
      out += detail::csv_field(row.label);
      for (double v : row.errors) {
        out += ',';
        out += detail::sig6(v);
      }
      out += '\n';
    }
  } else {
    out += "| " + rep.label_header;
    for (const auto& name : rep.dataset_names) out += " | " + name;
    out += " |\n|";
    for (std::size_t i = 0; i < rep.dataset_names.size() + 1; ++i) out += " --- |";
    out += '\n';
    for (const auto& row : rep.rows) {
      out += "| " + row.label;
      for (double v : row.errors) out += " | " + detail::sig6(v);
      out += " |\n";
    }
    out += "\nmetric: ";
    out += metric_name(rep.metric);
    out += '\n';
  }
  return out;
}

}  // namespace grnet

#pragma once

#include <cctype>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <Eigen/Dense>

#include "grnet/errors.hpp"
#include "grnet/expression.hpp"
#include "grnet/numfmt.hpp"
#include "grnet/regression.hpp"

namespace grnet {

/// Expression CSV layout: header row of gene names, one row per sample.
/// With has_sample_id_column the first column carries sample ids; without
/// it, ids s1..sn are generated on load.
struct CsvSpec {
  char delimiter = ',';
  bool has_sample_id_column = true;
};

inline void check_csv_spec(const CsvSpec& spec) {
  const unsigned char d = static_cast<unsigned char>(spec.delimiter);
  if (d == '"' || d == '\r' || d == '\n' || d == '.' || std::isdigit(d))
    throw std::invalid_argument("delimiter must not be a quote, newline, dot, or digit");
}

namespace detail {

/// Splits one terminator-free line into fields. Quoted fields follow the
/// usual doubling rule and may hold the delimiter, but not a line break.
/// `row` is the 1-based line number used in errors.
inline std::vector<std::string> split_csv_line(const std::string& line, char delim,
                                               std::size_t row) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (true) {
    const std::size_t col = fields.size() + 1;
    std::string field;
    if (pos < line.size() && line[pos] == '"') {
      ++pos;
      bool closed = false;
      while (pos < line.size()) {
        if (line[pos] == '"') {
          if (pos + 1 < line.size() && line[pos + 1] == '"') {
            field += '"';
            pos += 2;
          } else {
            ++pos;
            closed = true;
            break;
          }
        } else {
          field += line[pos++];
        }
      }
      if (!closed) throw parse_error(row, col, "unterminated quoted field");
      if (pos < line.size() && line[pos] != delim)
        throw parse_error(row, col, "unexpected character after closing quote");
    } else {
      while (pos < line.size() && line[pos] != delim) field += line[pos++];
    }
    fields.push_back(std::move(field));
    if (pos >= line.size()) break;
    ++pos;  // skip delimiter; a trailing one yields an empty final field
  }
  return fields;
}

inline double parse_csv_number(const std::string& field, std::size_t row, std::size_t col) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = first + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw parse_error(row, col, "invalid number \"" + field + "\"");
  return value;
}

}  // namespace detail

/// Parses an expression matrix. Error coordinates are 1-based and count the
/// header as row 1 and the sample-id column (when present) as column 1.
/// CRLF and LF both load. The parsed matrix must pass validate_matrix; the
/// first finding is thrown as validation_error otherwise.
inline ExpressionMatrix load_matrix_csv(std::istream& in, const CsvSpec& spec = {}) {
  check_csv_spec(spec);
  std::string text(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>{});
  if (text.rfind("\xEF\xBB\xBF", 0) == 0) text.erase(0, 3);

  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    std::size_t len = end - start;
    if (len > 0 && text[start + len - 1] == '\r') --len;
    lines.push_back(text.substr(start, len));
    start = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw empty_input("csv: no content");

  const std::size_t id_cols = spec.has_sample_id_column ? 1 : 0;
  const std::vector<std::string> header = detail::split_csv_line(lines[0], spec.delimiter, 1);
  if (header.size() < id_cols + 1) throw parse_error(1, 1, "header has no gene columns");
  const std::vector<std::string> gene_names(header.begin() + static_cast<std::ptrdiff_t>(id_cols),
                                            header.end());
  const std::size_t p = gene_names.size();
  const std::size_t n = lines.size() - 1;

  std::vector<std::string> sample_ids;
  Eigen::MatrixXd values(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t row = i + 2;
    const std::vector<std::string> fields =
        detail::split_csv_line(lines[i + 1], spec.delimiter, row);
    if (fields.size() != header.size()) {
      const std::size_t col = std::min(fields.size(), header.size()) + 1;
      throw parse_error(row, col,
                        "expected " + std::to_string(header.size()) + " field(s), got " +
                            std::to_string(fields.size()));
    }
    sample_ids.push_back(spec.has_sample_id_column ? fields[0] : "s" + std::to_string(i + 1));
    for (std::size_t j = 0; j < p; ++j)
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          detail::parse_csv_number(fields[id_cols + j], row, id_cols + j + 1);
  }

  ExpressionMatrix m(std::move(values), gene_names, sample_ids);
  const std::vector<std::string> findings = validate_matrix(m);
  if (!findings.empty()) throw validation_error(findings.front());
  return m;
}

inline ExpressionMatrix load_matrix_csv_string(const std::string& text, const CsvSpec& spec = {}) {
  std::istringstream in(text);
  return load_matrix_csv(in, spec);
}

inline ExpressionMatrix load_matrix_csv_file(const std::string& path, const CsvSpec& spec = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open file: " + path);
  return load_matrix_csv(in, spec);
}

/// Writes the matrix back out: header then one row per sample, LF line ends,
/// values in shortest round-trip form.
inline void write_matrix_csv(std::ostream& out, const ExpressionMatrix& m,
                             const CsvSpec& spec = {}) {
  check_csv_spec(spec);
  const char d = spec.delimiter;
  if (spec.has_sample_id_column) out << "sample";
  for (std::size_t j = 0; j < m.p(); ++j) {
    if (spec.has_sample_id_column || j > 0) out << d;
    out << m.gene_names()[j];
  }
  out << '\n';
  for (std::size_t i = 0; i < m.n(); ++i) {
    if (spec.has_sample_id_column) out << m.sample_ids()[i];
    for (std::size_t j = 0; j < m.p(); ++j) {
      if (spec.has_sample_id_column || j > 0) out << d;
      out << detail::round_trip(m.value(i, j));
    }
    out << '\n';
  }
}

/// Writes a gene-by-gene correlation grid with gene names on both axes.
inline void write_correlation_csv(std::ostream& out, const CorrelationMatrix& cm,
                                  char delimiter = ',') {
  out << "gene";
  for (const auto& g : cm.gene_ids) out << delimiter << g.name;
  out << '\n';
  const std::size_t p = cm.gene_ids.size();
  for (std::size_t i = 0; i < p; ++i) {
    out << cm.gene_ids[i].name;
    for (std::size_t j = 0; j < p; ++j) out << delimiter << detail::round_trip(cm.r(i, j));
    out << '\n';
  }
}

}  // namespace grnet

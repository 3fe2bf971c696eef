#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "grnet/errors.hpp"

namespace grnet {

/// Column identity inside one ExpressionMatrix. The index is authoritative;
/// the name is a display label taken from the input header.
struct GeneId {
  std::size_t index = 0;
  std::string name;

  friend bool operator==(const GeneId&, const GeneId&) = default;
};

/// Absolute tolerance on the sample variance below which a column counts as
/// constant. Excludes only numerically flat columns, not low-variance signal.
inline constexpr double kZeroVarianceTol = 1e-12;

namespace detail {

inline double mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

/// Unbiased sample variance; 0 for fewer than two observations.
inline double sample_variance(std::span<const double> v) {
  const std::size_t n = v.size();
  if (n < 2) return 0.0;
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) {
    const double d = x - m;
    ss += d * d;
  }
  return ss / static_cast<double>(n - 1);
}

inline bool is_constant(std::span<const double> v) {
  return sample_variance(v) <= kZeroVarianceTol;
}

}  // namespace detail

/// n samples (rows) by p genes (columns) of real-valued expression levels.
/// Immutable after construction; consumers may read it concurrently.
class ExpressionMatrix {
public:
  ExpressionMatrix(Eigen::MatrixXd values, std::vector<std::string> gene_names,
                   std::vector<std::string> sample_ids)
      : values_(std::move(values)),
        gene_names_(std::move(gene_names)),
        sample_ids_(std::move(sample_ids)) {
    if (gene_names_.size() != static_cast<std::size_t>(values_.cols()))
      throw std::invalid_argument("ExpressionMatrix: gene name count != column count");
    if (sample_ids_.size() != static_cast<std::size_t>(values_.rows()))
      throw std::invalid_argument("ExpressionMatrix: sample id count != row count");
  }

  std::size_t n() const { return static_cast<std::size_t>(values_.rows()); }
  std::size_t p() const { return static_cast<std::size_t>(values_.cols()); }

  const Eigen::MatrixXd& values() const { return values_; }
  double value(std::size_t sample, std::size_t gene) const {
    return values_(static_cast<Eigen::Index>(sample), static_cast<Eigen::Index>(gene));
  }

  /// Contiguous view of one gene column (the storage is column-major).
  std::span<const double> column(std::size_t gene) const {
    return {values_.data() + static_cast<std::ptrdiff_t>(gene) * values_.rows(),
            static_cast<std::size_t>(values_.rows())};
  }

  GeneId gene(std::size_t index) const { return GeneId{index, gene_names_.at(index)}; }

  std::vector<GeneId> gene_ids() const {
    std::vector<GeneId> out;
    out.reserve(p());
    for (std::size_t j = 0; j < p(); ++j) out.push_back(GeneId{j, gene_names_[j]});
    return out;
  }

  const std::vector<std::string>& gene_names() const { return gene_names_; }
  const std::vector<std::string>& sample_ids() const { return sample_ids_; }

private:
  Eigen::MatrixXd values_;
  std::vector<std::string> gene_names_;
  std::vector<std::string> sample_ids_;
};

/// Checks the matrix invariants. Empty result means the matrix is valid;
/// otherwise one finding per violation, in deterministic order.
inline std::vector<std::string> validate_matrix(const ExpressionMatrix& m) {
  std::vector<std::string> findings;
  if (m.n() < 3) findings.push_back("n < 3");
  if (m.p() < 2) findings.push_back("p < 2");

  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t j = 0; j < m.p(); ++j) {
    auto [it, inserted] = seen.emplace(m.gene_names()[j], j);
    if (!inserted)
      findings.push_back("duplicate gene name \"" + m.gene_names()[j] + "\" (columns " +
                         std::to_string(it->second) + " and " + std::to_string(j) + ")");
  }

  for (std::size_t i = 0; i < m.n(); ++i)
    for (std::size_t j = 0; j < m.p(); ++j)
      if (!std::isfinite(m.value(i, j)))
        findings.push_back("non-finite at sample " + std::to_string(i) + ", gene " +
                           std::to_string(j));

  return findings;
}

/// Every gene whose column is constant (sample variance <= kZeroVarianceTol).
inline std::vector<GeneId> zero_variance_genes(const ExpressionMatrix& m) {
  std::vector<GeneId> out;
  for (std::size_t j = 0; j < m.p(); ++j)
    if (detail::is_constant(m.column(j))) out.push_back(m.gene(j));
  return out;
}

/// Per-gene standardization: (x - mean) / sd. Constant columns are only
/// centered, which leaves them at zero.
inline ExpressionMatrix zscore_columns(const ExpressionMatrix& m) {
  Eigen::MatrixXd out = m.values();
  for (std::size_t j = 0; j < m.p(); ++j) {
    const auto col = m.column(j);
    const double mu = detail::mean(col);
    const double var = detail::sample_variance(col);
    const double scale = var > kZeroVarianceTol ? 1.0 / std::sqrt(var) : 1.0;
    for (std::size_t i = 0; i < m.n(); ++i)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          (m.value(i, j) - mu) * scale;
  }
  return ExpressionMatrix(std::move(out), m.gene_names(), m.sample_ids());
}

}  // namespace grnet

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "grnet/errors.hpp"
#include "grnet/expression.hpp"

namespace grnet {

enum class Metric { mse, mae };

inline const char* metric_name(Metric m) { return m == Metric::mse ? "mse" : "mae"; }

/// One least-squares fit: y ~ intercept + coefficients . parents.
/// parent_ids is empty when the fit was made from an anonymous design;
/// gene-aware entry points fill it aligned with coefficients.
struct RegressionFit {
  double intercept = 0.0;
  std::vector<double> coefficients;
  std::vector<double> residuals;
  double rss = 0.0;
  std::vector<GeneId> parent_ids;
};

/// Leave-one-out cross-validated prediction error, one fold per sample.
struct LoocvError {
  double value = 0.0;
  Metric metric = Metric::mse;
  std::size_t folds = 0;
};

/// Pairwise Pearson correlations over all genes. Entries touching a constant
/// gene are 0 and the gene is flagged; the rest of the diagonal is exactly 1.
struct CorrelationMatrix {
  Eigen::MatrixXd values;
  std::vector<GeneId> gene_ids;
  std::vector<bool> constant_gene;

  double r(std::size_t i, std::size_t j) const {
    return values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
};

/// Pearson correlation coefficient of two equal-length vectors, in [-1, 1].
inline double pearson_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw length_mismatch("pearson_correlation: vectors have lengths " +
                          std::to_string(x.size()) + " and " + std::to_string(y.size()));
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("pearson_correlation: need at least 2 samples");

  const double mx = detail::mean(x);
  const double my = detail::mean(y);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  const double denom = static_cast<double>(n - 1);
  if (sxx / denom <= kZeroVarianceTol)
    throw zero_variance("pearson_correlation: x is constant");
  if (syy / denom <= kZeroVarianceTol)
    throw zero_variance("pearson_correlation: y is constant");
  return sxy / std::sqrt(sxx * syy);
}

/// Full p x p correlation matrix. Constant genes are not an error here: every
/// entry involving one (its diagonal included) is set to 0 and the gene is
/// flagged in constant_gene.
inline CorrelationMatrix correlation_matrix(const ExpressionMatrix& m) {
  const std::size_t p = m.p();
  CorrelationMatrix cm;
  cm.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
  cm.gene_ids = m.gene_ids();
  cm.constant_gene.resize(p);
  for (std::size_t j = 0; j < p; ++j) cm.constant_gene[j] = detail::is_constant(m.column(j));

  for (std::size_t i = 0; i < p; ++i) {
    if (cm.constant_gene[i]) continue;
    cm.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
    for (std::size_t j = i + 1; j < p; ++j) {
      if (cm.constant_gene[j]) continue;
      const double r = pearson_correlation(m.column(i), m.column(j));
      cm.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = r;
      cm.values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = r;
    }
  }
  return cm;
}

/// Closed-form simple linear regression of y on x.
inline RegressionFit fit_simple_lr(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw length_mismatch("fit_simple_lr: vectors have lengths " + std::to_string(x.size()) +
                          " and " + std::to_string(y.size()));
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("fit_simple_lr: need at least 2 samples");

  const double mx = detail::mean(x);
  const double my = detail::mean(y);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    sxx += dx * dx;
    sxy += dx * (y[i] - my);
  }
  if (sxx / static_cast<double>(n - 1) <= kZeroVarianceTol)
    throw zero_variance("fit_simple_lr: x is constant");

  RegressionFit fit;
  const double slope = sxy / sxx;
  fit.intercept = my - slope * mx;
  fit.coefficients = {slope};
  fit.residuals.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    fit.residuals[i] = y[i] - (fit.intercept + slope * x[i]);
    fit.rss += fit.residuals[i] * fit.residuals[i];
  }
  return fit;
}

/// Least squares with intercept on an n x k design. Solved by complete
/// orthogonal factorization, so a rank-deficient augmented design (including
/// k >= n) yields the minimum-norm solution instead of failing.
/// k = 0 is the intercept-only model: the training mean.
inline RegressionFit fit_mlr(const Eigen::MatrixXd& design, const Eigen::VectorXd& y,
                             std::vector<GeneId> parent_ids = {}) {
  const std::size_t n = static_cast<std::size_t>(y.size());
  const std::size_t k = static_cast<std::size_t>(design.cols());
  if (n < 1) throw std::invalid_argument("fit_mlr: need at least 1 sample");
  if (k > 0 && static_cast<std::size_t>(design.rows()) != n)
    throw length_mismatch("fit_mlr: design has " + std::to_string(design.rows()) +
                          " rows, y has " + std::to_string(n));
  if (!parent_ids.empty() && parent_ids.size() != k)
    throw length_mismatch("fit_mlr: parent id count != design column count");

  RegressionFit fit;
  fit.parent_ids = std::move(parent_ids);
  fit.residuals.resize(n);

  if (k == 0) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += y(static_cast<Eigen::Index>(i));
    fit.intercept = s / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      fit.residuals[i] = y(static_cast<Eigen::Index>(i)) - fit.intercept;
      fit.rss += fit.residuals[i] * fit.residuals[i];
    }
    return fit;
  }

  Eigen::MatrixXd a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k + 1));
  a.col(0).setOnes();
  a.rightCols(static_cast<Eigen::Index>(k)) = design;
  const Eigen::VectorXd beta = a.completeOrthogonalDecomposition().solve(y);

  fit.intercept = beta(0);
  fit.coefficients.assign(beta.data() + 1, beta.data() + 1 + k);
  const Eigen::VectorXd resid = y - a * beta;
  for (std::size_t i = 0; i < n; ++i) {
    fit.residuals[i] = resid(static_cast<Eigen::Index>(i));
    fit.rss += fit.residuals[i] * fit.residuals[i];
  }
  return fit;
}

/// Evaluates a fit at one predictor row.
inline double predict(const RegressionFit& fit, std::span<const double> x_row) {
  if (x_row.size() != fit.coefficients.size())
    throw length_mismatch("predict: row has " + std::to_string(x_row.size()) +
                          " values, fit has " + std::to_string(fit.coefficients.size()) +
                          " coefficients");
  double out = fit.intercept;
  for (std::size_t i = 0; i < x_row.size(); ++i) out += fit.coefficients[i] * x_row[i];
  return out;
}

namespace detail {

inline void check_gene_in_matrix(const ExpressionMatrix& m, const GeneId& g,
                                 const char* role) {
  if (g.index >= m.p())
    throw unknown_gene(std::string(role) + " gene index " + std::to_string(g.index) +
                       " out of range (p = " + std::to_string(m.p()) + ")");
}

}  // namespace detail

/// Least squares of a target gene on named parent columns.
inline RegressionFit fit_gene_mlr(const ExpressionMatrix& m, const GeneId& target,
                                  const std::vector<GeneId>& parents) {
  detail::check_gene_in_matrix(m, target, "target");
  for (const auto& par : parents) detail::check_gene_in_matrix(m, par, "parent");

  const std::size_t n = m.n();
  const std::size_t k = parents.size();
  Eigen::MatrixXd design(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  for (std::size_t j = 0; j < k; ++j) {
    const auto col = m.column(parents[j].index);
    for (std::size_t i = 0; i < n; ++i)
      design(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
  }
  Eigen::VectorXd y(static_cast<Eigen::Index>(n));
  {
    const auto col = m.column(target.index);
    for (std::size_t i = 0; i < n; ++i) y(static_cast<Eigen::Index>(i)) = col[i];
  }
  return fit_mlr(design, y, parents);
}

/// Leave-one-out cross-validated error of predicting `target` from `parents`.
/// Each fold refits on the other n-1 samples and scores the held-out one;
/// folds run in sample order and the mean is taken over all n folds.
inline LoocvError loocv_error(const ExpressionMatrix& m, const GeneId& target,
                              const std::vector<GeneId>& parents, Metric metric) {
  detail::check_gene_in_matrix(m, target, "target");
  for (const auto& par : parents) {
    detail::check_gene_in_matrix(m, par, "parent");
    if (par.index == target.index)
      throw target_in_parents("loocv_error: target gene " + std::to_string(target.index) +
                              " appears in its own parent list");
  }
  const std::size_t n = m.n();
  if (n < 3) throw std::invalid_argument("loocv_error: need n >= 3");

  const std::size_t k = parents.size();
  Eigen::MatrixXd full(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  for (std::size_t j = 0; j < k; ++j) {
    const auto col = m.column(parents[j].index);
    for (std::size_t i = 0; i < n; ++i)
      full(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
  }
  const auto y = m.column(target.index);

  Eigen::MatrixXd train(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(k));
  Eigen::VectorXd ytrain(static_cast<Eigen::Index>(n - 1));
  std::vector<double> row(k);

  double acc = 0.0;
  for (std::size_t hold = 0; hold < n; ++hold) {
    Eigen::Index r = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == hold) continue;
      for (std::size_t j = 0; j < k; ++j)
        train(r, static_cast<Eigen::Index>(j)) = full(static_cast<Eigen::Index>(i),
                                                      static_cast<Eigen::Index>(j));
      ytrain(r) = y[i];
      ++r;
    }
    const RegressionFit fit = fit_mlr(train, ytrain);
    for (std::size_t j = 0; j < k; ++j)
      row[j] = full(static_cast<Eigen::Index>(hold), static_cast<Eigen::Index>(j));
    const double err = y[hold] - predict(fit, row);
    acc += metric == Metric::mse ? err * err : std::abs(err);
  }
  return LoocvError{acc / static_cast<double>(n), metric, n};
}

}  // namespace grnet

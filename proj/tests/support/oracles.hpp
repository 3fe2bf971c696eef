#pragma once

// Independent reference implementations and data generators. Numerics here
// are hand-rolled in long double and share no code with the library, so
// agreement is evidence, not tautology.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "grnet/expression.hpp"
#include "grnet/regression.hpp"

namespace oracle {

inline long double pearson(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  long double mx = 0.0L, my = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  long double num = 0.0L, sxx = 0.0L, syy = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    num += y[i] * (x[i] - mx);  // ≡ Σ(x-mx)(y-my): the y-mean term cancels
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return num / std::sqrt(sxx * syy);
}

struct SimpleFit {
  long double intercept = 0.0L;
  long double slope = 0.0L;
  long double rss = 0.0L;
};

inline SimpleFit simple_lr(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  long double mx = 0.0L, my = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  long double sxx = 0.0L, sxy = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  SimpleFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < n; ++i) {
    const long double r = y[i] - (fit.intercept + fit.slope * x[i]);
    fit.rss += r * r;
  }
  return fit;
}

struct Ols {
  long double intercept = 0.0L;
  std::vector<long double> coefs;
  long double rss = 0.0L;
};

/// OLS with intercept via long-double normal equations and Gaussian
/// elimination with partial pivoting. cols: k predictor columns of length n.
/// nullopt when the normal matrix is numerically singular (collinear or
/// underdetermined designs) — those instances are out of this oracle's reach.
inline std::optional<Ols> ols(const std::vector<std::vector<double>>& cols,
                              std::span<const double> y) {
  const std::size_t n = y.size();
  const std::size_t k = cols.size();
  const std::size_t d = k + 1;

  // design row i = [1, cols[0][i], ..., cols[k-1][i]]
  const auto design = [&](std::size_t i, std::size_t j) -> long double {
    return j == 0 ? 1.0L : static_cast<long double>(cols[j - 1][i]);
  };

  std::vector<std::vector<long double>> a(d, std::vector<long double>(d + 1, 0.0L));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c)
      for (std::size_t i = 0; i < n; ++i) a[r][c] += design(i, r) * design(i, c);
    for (std::size_t i = 0; i < n; ++i) a[r][d] += design(i, r) * y[i];
  }

  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < d; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    if (std::fabs(a[pivot][col]) < 1e-14L) return std::nullopt;
    std::swap(a[col], a[pivot]);
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col) continue;
      const long double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= d; ++c) a[r][c] -= f * a[col][c];
    }
  }

  Ols fit;
  fit.intercept = a[0][d] / a[0][0];
  fit.coefs.resize(k);
  for (std::size_t j = 0; j < k; ++j) fit.coefs[j] = a[j + 1][d] / a[j + 1][j + 1];
  for (std::size_t i = 0; i < n; ++i) {
    long double pred = fit.intercept;
    for (std::size_t j = 0; j < k; ++j) pred += fit.coefs[j] * cols[j][i];
    const long double r = y[i] - pred;
    fit.rss += r * r;
  }
  return fit;
}

/// LOOCV by explicit fold enumeration, fitting each fold with the long-double
/// OLS above. Fully independent of the library. nullopt if any fold is
/// singular for this oracle.
inline std::optional<long double> loocv(const grnet::ExpressionMatrix& m, std::size_t target,
                                        const std::vector<std::size_t>& parents, bool mse) {
  const std::size_t n = m.n();
  long double acc = 0.0L;
  for (std::size_t held = 0; held < n; ++held) {
    std::vector<std::vector<double>> cols(parents.size());
    std::vector<double> y;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == held) continue;
      y.push_back(m.value(i, target));
      for (std::size_t j = 0; j < parents.size(); ++j)
        cols[j].push_back(m.value(i, parents[j]));
    }
    long double pred;
    if (parents.empty()) {
      long double mean = 0.0L;
      for (double v : y) mean += v;
      pred = mean / static_cast<long double>(y.size());
    } else {
      const std::optional<Ols> fit = ols(cols, y);
      if (!fit) return std::nullopt;
      pred = fit->intercept;
      for (std::size_t j = 0; j < parents.size(); ++j)
        pred += fit->coefs[j] * m.value(held, parents[j]);
    }
    const long double err = m.value(held, target) - pred;
    acc += mse ? err * err : std::fabs(err);
  }
  return acc / static_cast<long double>(n);
}

/// LOOCV by explicit fold enumeration fitting each fold with the library's
/// own fit_mlr — shared regression kernel, independent fold assembly and
/// averaging. Comparable to loocv_error exactly.
inline double loocv_shared(const grnet::ExpressionMatrix& m, std::size_t target,
                           const std::vector<std::size_t>& parents, grnet::Metric metric) {
  const std::size_t n = m.n();
  const std::size_t k = parents.size();
  double acc = 0.0;
  for (std::size_t held = 0; held < n; ++held) {
    Eigen::MatrixXd design(n - 1, k);
    Eigen::VectorXd y(n - 1);
    Eigen::Index r = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == held) continue;
      y(r) = m.value(i, target);
      for (std::size_t j = 0; j < k; ++j)
        design(r, static_cast<Eigen::Index>(j)) = m.value(i, parents[j]);
      ++r;
    }
    const grnet::RegressionFit fit = grnet::fit_mlr(design, y);
    std::vector<double> row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = m.value(held, parents[j]);
    const double err = m.value(held, target) - grnet::predict(fit, row);
    acc += metric == grnet::Metric::mse ? err * err : std::abs(err);
  }
  return acc / static_cast<double>(n);
}

inline double rel_diff(long double a, long double b) {
  const long double scale = std::max({1.0L, std::fabs(a), std::fabs(b)});
  return static_cast<double>(std::fabs(a - b) / scale);
}

/// Builds a matrix from row-major values with g1..gp / s1..sn names.
inline grnet::ExpressionMatrix make_matrix(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  const std::size_t p = rows.front().size();
  Eigen::MatrixXd values(n, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j)
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  std::vector<std::string> genes, samples;
  for (std::size_t j = 0; j < p; ++j) genes.push_back("g" + std::to_string(j + 1));
  for (std::size_t i = 0; i < n; ++i) samples.push_back("s" + std::to_string(i + 1));
  return grnet::ExpressionMatrix(std::move(values), genes, samples);
}

/// Random matrix; structured mode rewrites a third of the columns as noisy
/// linear images of earlier ones so correlations clear real thresholds.
inline grnet::ExpressionMatrix random_matrix(std::mt19937& rng, std::size_t n, std::size_t p,
                                             bool structured) {
  std::uniform_real_distribution<double> value(-3.0, 3.0);
  std::normal_distribution<double> noise(0.0, 0.4);
  std::vector<std::vector<double>> rows(n, std::vector<double>(p));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) rows[i][j] = value(rng);
  if (structured) {
    std::uniform_int_distribution<std::size_t> pick(0, p - 1);
    std::uniform_real_distribution<double> w(-2.0, 2.0);
    for (std::size_t j = 1; j < p; j += 3) {
      const std::size_t base = pick(rng) % j;
      const double weight = w(rng);
      for (std::size_t i = 0; i < n; ++i) rows[i][j] = weight * rows[i][base] + noise(rng);
    }
  }
  return make_matrix(rows);
}

}  // namespace oracle

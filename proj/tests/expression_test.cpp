#include "grnet/expression.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "support/oracles.hpp"

using grnet::ExpressionMatrix;

namespace {

ExpressionMatrix tiny() {
  return oracle::make_matrix({{1.0, 2.0, 7.0},
                              {2.0, 4.0, 7.0},
                              {3.0, 6.5, 7.0},
                              {4.0, 8.0, 7.0}});
}

TEST(ExpressionMatrix, ShapeAndAccessors) {
  const ExpressionMatrix m = tiny();
  EXPECT_EQ(m.n(), 4u);
  EXPECT_EQ(m.p(), 3u);
  EXPECT_DOUBLE_EQ(m.value(2, 1), 6.5);
  EXPECT_EQ(m.gene(1).index, 1u);
  EXPECT_EQ(m.gene(1).name, "g2");
  EXPECT_EQ(m.gene_names(), (std::vector<std::string>{"g1", "g2", "g3"}));
  EXPECT_EQ(m.sample_ids().front(), "s1");
  EXPECT_EQ(m.gene_ids().size(), 3u);
  EXPECT_EQ(m.gene_ids()[2], m.gene(2));
}

TEST(ExpressionMatrix, ColumnSpanViewsColumnMajorStorage) {
  const ExpressionMatrix m = tiny();
  const auto col = m.column(1);
  ASSERT_EQ(col.size(), 4u);
  EXPECT_DOUBLE_EQ(col[0], 2.0);
  EXPECT_DOUBLE_EQ(col[2], 6.5);
  EXPECT_EQ(col.data(), m.values().data() + 4);
}

TEST(ExpressionMatrix, ConstructorRejectsMismatchedNames) {
  Eigen::MatrixXd v(2, 2);
  v << 1, 2, 3, 4;
  EXPECT_THROW(ExpressionMatrix(v, {"g1"}, {"s1", "s2"}), std::invalid_argument);
  EXPECT_THROW(ExpressionMatrix(v, {"g1", "g2"}, {"s1"}), std::invalid_argument);
}

TEST(Validate, CleanMatrixHasNoFindings) {
  EXPECT_TRUE(grnet::validate_matrix(tiny()).empty());
}

TEST(Validate, ReportsSmallShapes) {
  const auto two_rows = oracle::make_matrix({{1.0, 2.0}, {2.0, 1.0}});
  const auto f = grnet::validate_matrix(two_rows);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0], "n < 3");

  Eigen::MatrixXd v(3, 1);
  v << 1, 2, 3;
  const ExpressionMatrix narrow(v, {"g1"}, {"s1", "s2", "s3"});
  const auto f2 = grnet::validate_matrix(narrow);
  ASSERT_EQ(f2.size(), 1u);
  EXPECT_EQ(f2[0], "p < 2");
}

TEST(Validate, ReportsDuplicateNamesWithBothColumns) {
  Eigen::MatrixXd v(3, 3);
  v << 1, 2, 3, 4, 5, 6, 7, 8, 10;
  const ExpressionMatrix m(v, {"a", "b", "a"}, {"s1", "s2", "s3"});
  const auto f = grnet::validate_matrix(m);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0], "duplicate gene name \"a\" (columns 0 and 2)");
}

TEST(Validate, ReportsNonFiniteInRowMajorOrder) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  const auto m = oracle::make_matrix({{1.0, nan}, {inf, 4.0}, {5.0, 6.0}});
  const auto f = grnet::validate_matrix(m);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0], "non-finite at sample 0, gene 1");
  EXPECT_EQ(f[1], "non-finite at sample 1, gene 0");
}

TEST(Stats, MeanVarianceAgainstHandValues) {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  EXPECT_DOUBLE_EQ(grnet::detail::mean(v), 2.5);
  // Σ(x-2.5)² = 2.25+0.25+0.25+2.25 = 5, /3
  EXPECT_DOUBLE_EQ(grnet::detail::sample_variance(v), 5.0 / 3.0);
  EXPECT_DOUBLE_EQ(grnet::detail::sample_variance(std::vector<double>{7.0}), 0.0);
}

TEST(Stats, ConstantDetectionUsesAbsoluteTolerance) {
  EXPECT_TRUE(grnet::detail::is_constant(std::vector<double>{2.0, 2.0, 2.0}));
  EXPECT_FALSE(grnet::detail::is_constant(std::vector<double>{2.0, 2.0, 2.1}));
  // variance exactly at the tolerance still counts as constant
  EXPECT_TRUE(grnet::detail::is_constant(std::vector<double>{0.0, 0.0}));
}

TEST(Stats, ZeroVarianceGenesFindsConstantColumns) {
  const auto ids = grnet::zero_variance_genes(tiny());
  ASSERT_EQ(ids.size(), 1u);
  EXPECT_EQ(ids[0].name, "g3");
}

TEST(Zscore, StandardizesNonConstantColumns) {
  const ExpressionMatrix z = grnet::zscore_columns(tiny());
  for (std::size_t j = 0; j < 2; ++j) {
    EXPECT_NEAR(grnet::detail::mean(z.column(j)), 0.0, 1e-15);
    EXPECT_NEAR(grnet::detail::sample_variance(z.column(j)), 1.0, 1e-12);
  }
}

TEST(Zscore, ConstantColumnsBecomeZeros) {
  const ExpressionMatrix z = grnet::zscore_columns(tiny());
  for (std::size_t i = 0; i < z.n(); ++i) EXPECT_DOUBLE_EQ(z.value(i, 2), 0.0);
  EXPECT_EQ(z.gene_names(), tiny().gene_names());
}

}  // namespace

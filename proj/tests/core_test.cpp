#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "mcboost/core.hpp"

using namespace mcboost;

namespace {

ScoringFunction constant_votes(std::size_t k, std::initializer_list<std::pair<Label, double>> votes) {
  ScoringFunction f(k);
  for (auto [l, a] : votes) f.add(std::make_shared<ConstantClassifier>(l), a);
  return f;
}

}  // namespace

TEST(Dataset, RejectsBadShapes) {
  EXPECT_THROW(Dataset::labels_only({}, 3), std::invalid_argument);
  EXPECT_THROW(Dataset::labels_only({0, 1}, 1), std::invalid_argument);
  EXPECT_THROW(Dataset::labels_only({0, 3}, 3), std::invalid_argument);
  auto col = FeatureColumn::make_numeric("x", {1.0});
  EXPECT_THROW(Dataset({col}, {0, 1}, 2), std::invalid_argument);
}

TEST(Dataset, DefaultLabelNamesAreOneBased) {
  Dataset d = Dataset::labels_only({0, 1, 2}, 3);
  ASSERT_EQ(d.label_names().size(), 3u);
  EXPECT_EQ(d.label_names()[0], "1");
  EXPECT_EQ(d.label_names()[2], "3");
}

TEST(Dataset, SubsetKeepsLevelsAndLabels) {
  auto num = FeatureColumn::make_numeric("x", {1.0, 2.0, 3.0});
  auto cat = FeatureColumn::make_categorical("c", {"a", "b", "a"});
  Dataset d({num, cat}, {0, 1, 0}, 2);
  std::vector<std::size_t> rows{2, 1};
  Dataset s = d.subset(rows);
  EXPECT_EQ(s.m(), 2u);
  EXPECT_EQ(s.label(1), 1u);
  EXPECT_DOUBLE_EQ(s.column(0).numeric[0], 3.0);
  EXPECT_EQ(s.column(1).levels[static_cast<std::size_t>(s.column(1).codes[1])], "b");
}

TEST(PluralityPredict, AllTieGoesToFirstLabel) {
  std::vector<double> s{0.0, 0.0, 0.0, 0.0};
  EXPECT_EQ(plurality_predict(s), 0u);
}

TEST(PluralityPredict, UniqueArgmax) {
  std::vector<double> s{0.2, 0.9, 0.1};
  EXPECT_EQ(plurality_predict(s), 1u);
}

TEST(PluralityPredict, EqualWeightsOnTwoConstantsTie) {
  Dataset d = Dataset::labels_only({0}, 3);
  ScoringFunction f = constant_votes(3, {{0, 1.0}, {1, 1.0}});
  EXPECT_EQ(plurality_predict(f, d, 0), 0u);
}

TEST(PluralityPredict, ShiftInvariant) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> s(5);
    for (auto& v : s) v = std::round(u(rng));  // integer values make ties common
    std::vector<double> shifted(s);
    const double c = u(rng);
    for (auto& v : shifted) v += c;
    // Integer shifts are exact, so ties survive them bit for bit.
    std::vector<double> int_shift(s);
    for (auto& v : int_shift) v += 7.0;
    EXPECT_EQ(plurality_predict(s), plurality_predict(int_shift));
    Label a = plurality_predict(s), b = plurality_predict(shifted);
    EXPECT_DOUBLE_EQ(s[a], s[b]);
  }
}

TEST(TrainingError, SeparatingScorerHasZeroError) {
  Dataset d = Dataset::labels_only({0, 1, 2}, 3);
  ScoringFunction f(3);
  f.add(std::make_shared<TableClassifier>(std::vector<Label>{0, 1, 2}), 1.0);
  EXPECT_DOUBLE_EQ(training_error(f, d), 0.0);
}

TEST(TrainingError, ZeroScorerIsAllErrors) {
  Dataset d = Dataset::labels_only({0, 1, 2, 1}, 3);
  ScoringFunction f(3);
  EXPECT_DOUBLE_EQ(training_error(f, d), 1.0);
}

TEST(TrainingError, UniformMixtureOnTwoExamplesTies) {
  Dataset d = Dataset::labels_only({0, 1}, 3);
  ScoringFunction f = constant_votes(3, {{0, 0.5}, {1, 0.5}});
  EXPECT_DOUBLE_EQ(training_error(f, d), 1.0);
}

TEST(ExpRisk, ZeroScorer) {
  Dataset d = Dataset::labels_only({0, 2}, 3);
  ScoringFunction f(3);
  EXPECT_DOUBLE_EQ(exp_risk(f, d), 2.0);
}

TEST(ExpRisk, BinarySingleExample) {
  Matrix s{{1.0, 0.0}};
  std::vector<Label> y{0};
  EXPECT_NEAR(exp_risk(s, y), std::exp(-1.0), 1e-15);
}

TEST(ExpRisk, DirectSum) {
  Matrix s{{0.0, 1.0, 2.0}};
  std::vector<Label> y{0};
  EXPECT_NEAR(exp_risk(s, y), std::exp(1.0) + std::exp(2.0), 1e-12);
  EXPECT_NEAR(exp_risk(s, y), 10.1073, 1e-4);
}

TEST(ExpRisk, LargeExponentsNeverNaN) {
  Matrix s{{0.0, 750.0, 0.0}, {0.0, 0.0, 0.0}};
  std::vector<Label> y{0, 0};
  double r = exp_risk(s, y);
  EXPECT_FALSE(std::isnan(r));
  Matrix t{{800.0, 0.0, 0.0}};
  std::vector<Label> y1{0};
  EXPECT_GE(exp_risk(t, y1), 0.0);
  EXPECT_LT(exp_risk(t, y1), 1e-300);
  Matrix u{{0.0, 705.0, 702.0}};
  EXPECT_NEAR(std::log(exp_risk(u, y1)), 705.0 + std::log1p(std::exp(-3.0)), 1e-9);
}

TEST(ExpRisk, ErrorIndicatorBoundedByExampleLoss) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> v(-3, 3);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> s(4);
    for (auto& x : s) x = v(rng);
    Label y = static_cast<Label>(trial % 4);
    double err = is_error(s, y) ? 1.0 : 0.0;
    EXPECT_LE(err, example_exp_loss(s, y) + 1e-15);
  }
}

TEST(CostFamilies, ConformanceRules) {
  std::vector<Label> y{0};
  EXPECT_TRUE(conforms(Matrix{{0.0, 0.3, 0.3}}, CostFamily::kSam, y));
  EXPECT_FALSE(conforms(Matrix{{0.0, 0.3, 0.2}}, CostFamily::kSam, y));
  EXPECT_TRUE(conforms(Matrix{{-0.4, 0.4, 0.4}}, CostFamily::kM1, y));
  EXPECT_FALSE(conforms(Matrix{{0.4, -0.4, -0.4}}, CostFamily::kM1, y));
  EXPECT_TRUE(conforms(Matrix{{-1.0, 0.0, 2.0}}, CostFamily::kMH, y));
  EXPECT_FALSE(conforms(Matrix{{1.0, 0.0, 2.0}}, CostFamily::kMH, y));
  EXPECT_TRUE(conforms(Matrix{{-3.0, 1.0, 2.0}}, CostFamily::kMR, y));
  EXPECT_FALSE(conforms(Matrix{{-3.0, 1.0, 1.0}}, CostFamily::kMR, y));
  EXPECT_TRUE(conforms(Matrix{{0.1, 0.1, 5.0}}, CostFamily::kEor, y));
  EXPECT_FALSE(conforms(Matrix{{0.2, 0.1, 5.0}}, CostFamily::kEor, y));
  EXPECT_THROW(make_cost(Matrix{{0.2, 0.1, 5.0}}, CostFamily::kEor, y), std::invalid_argument);
}

TEST(StateMatrix, RowSumsEqualRound) {
  std::mt19937_64 rng(5);
  StateMatrix s(7, 4);
  for (int t = 1; t <= 12; ++t) {
    std::vector<Label> p(7);
    for (auto& v : p) v = rng() % 4;
    s.add_votes(p, 1.0);
    for (std::size_t i = 0; i < 7; ++i) {
      double sum = 0.0;
      for (double v : s.votes().row(i)) sum += v;
      EXPECT_DOUBLE_EQ(sum, t);
    }
  }
  EXPECT_EQ(s.round(), 12u);
}

TEST(ScoringFunction, MatchesWeightedVoteSum) {
  std::mt19937_64 rng(9);
  Dataset d = Dataset::labels_only({0, 1, 2, 0, 1}, 3);
  ScoringFunction f(3);
  StateMatrix s(5, 3);
  for (int t = 0; t < 6; ++t) {
    std::vector<Label> p(5);
    for (auto& v : p) v = rng() % 3;
    double a = 0.1 * (t + 1);
    f.add(std::make_shared<TableClassifier>(p), a);
    s.add_votes(p, a);
  }
  EXPECT_LE(max_abs_diff(f.scores(d), s.votes()), 1e-15);
}

TEST(Indicator, OneHotRows) {
  std::vector<Label> p{2, 0};
  Matrix h = indicator(p, 3);
  EXPECT_EQ(h, (Matrix{{0, 0, 1}, {1, 0, 0}}));
}

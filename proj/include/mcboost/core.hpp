#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mcboost/matrix.hpp"

namespace mcboost {

// Labels are 0-based column indices: label 0 is the first class.
using Label = std::size_t;

enum class FeatureKind { kNumeric, kCategorical };

struct FeatureColumn {
  std::string name;
  FeatureKind kind = FeatureKind::kNumeric;
  std::vector<double> numeric;     // kNumeric
  std::vector<int> codes;          // kCategorical, indexes into levels
  std::vector<std::string> levels;

  std::size_t size() const { return kind == FeatureKind::kNumeric ? numeric.size() : codes.size(); }

  static FeatureColumn make_numeric(std::string name, std::vector<double> values);
  static FeatureColumn make_categorical(std::string name, std::vector<std::string> values);
};

class Dataset {
 public:
  Dataset(std::vector<FeatureColumn> columns, std::vector<Label> labels, std::size_t k,
          std::vector<std::string> label_names = {});

  // Examples identified only by index (finite-space fixtures).
  static Dataset labels_only(std::vector<Label> labels, std::size_t k);

  std::size_t m() const noexcept { return labels_.size(); }
  std::size_t k() const noexcept { return k_; }
  Label label(std::size_t i) const { return labels_[i]; }
  std::span<const Label> labels() const noexcept { return labels_; }
  const std::vector<std::string>& label_names() const noexcept { return label_names_; }

  std::size_t num_features() const noexcept { return columns_.size(); }
  const FeatureColumn& column(std::size_t j) const { return columns_.at(j); }
  const std::vector<FeatureColumn>& columns() const noexcept { return columns_; }

  Dataset subset(std::span<const std::size_t> rows) const;

 private:
  std::vector<FeatureColumn> columns_;
  std::vector<Label> labels_;
  std::size_t k_;
  std::vector<std::string> label_names_;
};

// A finite classifier space, stored as predictions on the training set.
using HypothesisSpace = std::vector<std::vector<Label>>;

class WeakClassifier {
 public:
  virtual ~WeakClassifier() = default;
  virtual Label predict(const Dataset& data, std::size_t i) const = 0;
  virtual std::string describe() const = 0;
};

using Hypothesis = std::shared_ptr<const WeakClassifier>;

// Explicit prediction per training index. Only meaningful on the dataset it was built for.
class TableClassifier final : public WeakClassifier {
 public:
  explicit TableClassifier(std::vector<Label> predictions) : predictions_(std::move(predictions)) {}
  Label predict(const Dataset& data, std::size_t i) const override;
  std::string describe() const override;
  const std::vector<Label>& predictions() const { return predictions_; }

 private:
  std::vector<Label> predictions_;
};

class ConstantClassifier final : public WeakClassifier {
 public:
  explicit ConstantClassifier(Label label) : label_(label) {}
  Label predict(const Dataset&, std::size_t) const override { return label_; }
  std::string describe() const override;

 private:
  Label label_;
};

std::vector<Label> predict_all(const WeakClassifier& h, const Dataset& data);

// 1_h: m x k indicator of the predictions.
Matrix indicator(std::span<const Label> predictions, std::size_t k);

enum class CostFamily { kEor, kSam, kM1, kMH, kMR, kUnconstrained };

const char* to_string(CostFamily f);

struct CostMatrix {
  Matrix entries;
  CostFamily family = CostFamily::kUnconstrained;
};

// Checks the row constraints of the family for the given labels.
bool conforms(const Matrix& c, CostFamily family, std::span<const Label> labels, double tol = 1e-12);

// Validating constructor; throws std::invalid_argument on a nonconforming row.
CostMatrix make_cost(Matrix entries, CostFamily family, std::span<const Label> labels);

enum class BaselineKind { kEor, kUniform, kM1, kMH, kMR };

const char* to_string(BaselineKind k);

struct Baseline {
  Matrix entries;
  BaselineKind kind = BaselineKind::kUniform;
  double gamma = 0.0;
};

// Vote counts s_t(i) (weighted when alphas differ from 1).
class StateMatrix {
 public:
  StateMatrix(std::size_t m, std::size_t k) : votes_(m, k) {}
  void add_votes(std::span<const Label> predictions, double alpha);
  const Matrix& votes() const noexcept { return votes_; }
  std::size_t round() const noexcept { return round_; }

 private:
  Matrix votes_;
  std::size_t round_ = 0;
};

class ScoringFunction {
 public:
  struct Term {
    Hypothesis h;
    double alpha;
  };

  explicit ScoringFunction(std::size_t k) : k_(k) {}
  void add(Hypothesis h, double alpha);
  std::size_t k() const noexcept { return k_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  std::vector<double> scores(const Dataset& data, std::size_t i) const;
  Matrix scores(const Dataset& data) const;

 private:
  std::size_t k_;
  std::vector<Term> terms_;
};

// argmax with lowest index on ties.
Label plurality_predict(std::span<const double> scores);
Label plurality_predict(const ScoringFunction& f, const Dataset& data, std::size_t i);

// Tie with the best wrong label counts as an error.
bool is_error(std::span<const double> scores, Label y);

double training_error(const Matrix& scores, std::span<const Label> labels);
double training_error(const ScoringFunction& f, const Dataset& data);

// Per-example sum over wrong labels of exp(F(l) - F(y)).
double example_exp_loss(std::span<const double> scores, Label y);

double exp_risk(const Matrix& scores, std::span<const Label> labels);
double exp_risk(const ScoringFunction& f, const Dataset& data);

}  // namespace mcboost

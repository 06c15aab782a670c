#include "mcboost/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace mcboost {

FeatureColumn FeatureColumn::make_numeric(std::string name, std::vector<double> values) {
  FeatureColumn c;
  c.name = std::move(name);
  c.kind = FeatureKind::kNumeric;
  c.numeric = std::move(values);
  return c;
}

FeatureColumn FeatureColumn::make_categorical(std::string name, std::vector<std::string> values) {
  FeatureColumn c;
  c.name = std::move(name);
  c.kind = FeatureKind::kCategorical;
  std::unordered_map<std::string, int> index;
  c.codes.reserve(values.size());
  for (auto& v : values) {
    auto [it, inserted] = index.try_emplace(v, static_cast<int>(c.levels.size()));
    if (inserted) c.levels.push_back(v);
    c.codes.push_back(it->second);
  }
  return c;
}

Dataset::Dataset(std::vector<FeatureColumn> columns, std::vector<Label> labels, std::size_t k,
                 std::vector<std::string> label_names)
    : columns_(std::move(columns)), labels_(std::move(labels)), k_(k), label_names_(std::move(label_names)) {
  if (labels_.empty()) throw std::invalid_argument("Dataset: need at least one example");
  if (k_ < 2) throw std::invalid_argument("Dataset: need at least two classes");
  for (Label y : labels_)
    if (y >= k_) throw std::invalid_argument("Dataset: label out of range");
  for (const auto& c : columns_)
    if (c.size() != labels_.size())
      throw std::invalid_argument("Dataset: column '" + c.name + "' has wrong length");
  if (label_names_.empty())
    for (std::size_t l = 0; l < k_; ++l) label_names_.push_back(std::to_string(l + 1));
  if (label_names_.size() != k_) throw std::invalid_argument("Dataset: label_names size != k");
}

Dataset Dataset::labels_only(std::vector<Label> labels, std::size_t k) {
  return Dataset({}, std::move(labels), k);
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
  std::vector<FeatureColumn> cols;
  cols.reserve(columns_.size());
  for (const auto& c : columns_) {
    FeatureColumn s;
    s.name = c.name;
    s.kind = c.kind;
    s.levels = c.levels;
    for (std::size_t r : rows) {
      if (c.kind == FeatureKind::kNumeric)
        s.numeric.push_back(c.numeric.at(r));
      else
        s.codes.push_back(c.codes.at(r));
    }
    cols.push_back(std::move(s));
  }
  std::vector<Label> ys;
  ys.reserve(rows.size());
  for (std::size_t r : rows) ys.push_back(labels_.at(r));
  return Dataset(std::move(cols), std::move(ys), k_, label_names_);
}

Label TableClassifier::predict(const Dataset&, std::size_t i) const { return predictions_.at(i); }

std::string TableClassifier::describe() const { return "table(" + std::to_string(predictions_.size()) + ")"; }

std::string ConstantClassifier::describe() const { return "const(" + std::to_string(label_) + ")"; }

std::vector<Label> predict_all(const WeakClassifier& h, const Dataset& data) {
  std::vector<Label> out(data.m());
  for (std::size_t i = 0; i < data.m(); ++i) out[i] = h.predict(data, i);
  return out;
}

Matrix indicator(std::span<const Label> predictions, std::size_t k) {
  Matrix out(predictions.size(), k);
  for (std::size_t i = 0; i < predictions.size(); ++i) out.at(i, predictions[i]) = 1.0;
  return out;
}

const char* to_string(CostFamily f) {
  switch (f) {
    case CostFamily::kEor: return "EOR";
    case CostFamily::kSam: return "SAM";
    case CostFamily::kM1: return "M1";
    case CostFamily::kMH: return "MH";
    case CostFamily::kMR: return "MR";
    case CostFamily::kUnconstrained: return "UNCONSTRAINED";
  }
  return "?";
}

const char* to_string(BaselineKind k) {
  switch (k) {
    case BaselineKind::kEor: return "EOR";
    case BaselineKind::kUniform: return "U";
    case BaselineKind::kM1: return "M1";
    case BaselineKind::kMH: return "MH";
    case BaselineKind::kMR: return "MR";
  }
  return "?";
}

static bool row_conforms(std::span<const double> c, Label y, CostFamily family, double tol) {
  const std::size_t k = c.size();
  switch (family) {
    case CostFamily::kUnconstrained:
      return true;
    case CostFamily::kEor:
      for (std::size_t l = 0; l < k; ++l)
        if (c[y] > c[l] + tol) return false;
      return true;
    case CostFamily::kSam: {
      if (std::fabs(c[y]) > tol) return false;
      double t = c[y == 0 ? 1 : 0];
      if (t < -tol) return false;
      for (std::size_t l = 0; l < k; ++l)
        if (l != y && std::fabs(c[l] - t) > tol) return false;
      return true;
    }
    case CostFamily::kM1: {
      double d = -c[y];
      if (d < -tol) return false;
      for (std::size_t l = 0; l < k; ++l)
        if (l != y && std::fabs(c[l] - d) > tol) return false;
      return true;
    }
    case CostFamily::kMH:
      if (c[y] > tol) return false;
      for (std::size_t l = 0; l < k; ++l)
        if (l != y && c[l] < -tol) return false;
      return true;
    case CostFamily::kMR: {
      double sum = 0.0, scale = 0.0;
      for (std::size_t l = 0; l < k; ++l) {
        sum += c[l];
        scale = std::max(scale, std::fabs(c[l]));
        if (l != y && c[l] < -tol) return false;
      }
      return std::fabs(sum) <= tol * std::max(1.0, scale);
    }
  }
  return false;
}

bool conforms(const Matrix& c, CostFamily family, std::span<const Label> labels, double tol) {
  if (c.rows() != labels.size()) return false;
  for (std::size_t i = 0; i < c.rows(); ++i)
    if (!row_conforms(c.row(i), labels[i], family, tol)) return false;
  return true;
}

CostMatrix make_cost(Matrix entries, CostFamily family, std::span<const Label> labels) {
  if (entries.rows() != labels.size()) throw std::invalid_argument("make_cost: row count != m");
  for (std::size_t i = 0; i < entries.rows(); ++i)
    if (!row_conforms(entries.row(i), labels[i], family, 1e-12))
      throw std::invalid_argument(std::string("make_cost: row ") + std::to_string(i) +
                                  " violates family " + to_string(family));
  return CostMatrix{std::move(entries), family};
}

void StateMatrix::add_votes(std::span<const Label> predictions, double alpha) {
  if (predictions.size() != votes_.rows()) throw std::invalid_argument("StateMatrix: size mismatch");
  for (std::size_t i = 0; i < predictions.size(); ++i) votes_.at(i, predictions[i]) += alpha;
  ++round_;
}

void ScoringFunction::add(Hypothesis h, double alpha) {
  if (!h) throw std::invalid_argument("ScoringFunction: null hypothesis");
  terms_.push_back({std::move(h), alpha});
}

std::vector<double> ScoringFunction::scores(const Dataset& data, std::size_t i) const {
  std::vector<double> s(k_, 0.0);
  for (const auto& t : terms_) s.at(t.h->predict(data, i)) += t.alpha;
  return s;
}

Matrix ScoringFunction::scores(const Dataset& data) const {
  Matrix out(data.m(), k_);
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < data.m(); ++i) out.at(i, t.h->predict(data, i)) += t.alpha;
  return out;
}

Label plurality_predict(std::span<const double> scores) {
  Label best = 0;
  for (std::size_t l = 1; l < scores.size(); ++l)
    if (scores[l] > scores[best]) best = l;
  return best;
}

Label plurality_predict(const ScoringFunction& f, const Dataset& data, std::size_t i) {
  auto s = f.scores(data, i);
  return plurality_predict(s);
}

bool is_error(std::span<const double> scores, Label y) {
  for (std::size_t l = 0; l < scores.size(); ++l)
    if (l != y && scores[l] >= scores[y]) return true;
  return false;
}

double training_error(const Matrix& scores, std::span<const Label> labels) {
  if (scores.rows() != labels.size()) throw std::invalid_argument("training_error: size mismatch");
  std::size_t errors = 0;
  for (std::size_t i = 0; i < scores.rows(); ++i) errors += is_error(scores.row(i), labels[i]) ? 1 : 0;
  return static_cast<double>(errors) / static_cast<double>(labels.size());
}

double training_error(const ScoringFunction& f, const Dataset& data) {
  return training_error(f.scores(data), data.labels());
}

// log of sum_{l != y} exp(s_l - s_y)
static double log_example_loss(std::span<const double> s, Label y) {
  double mx = -std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < s.size(); ++l)
    if (l != y) mx = std::max(mx, s[l] - s[y]);
  double acc = 0.0;
  for (std::size_t l = 0; l < s.size(); ++l)
    if (l != y) acc += std::exp(s[l] - s[y] - mx);
  return mx + std::log(acc);
}

double example_exp_loss(std::span<const double> s, Label y) {
  double plain = 0.0;
  bool big = false;
  for (std::size_t l = 0; l < s.size(); ++l) {
    if (l == y) continue;
    double e = s[l] - s[y];
    if (std::fabs(e) > 700.0) big = true;
    plain += std::exp(e);
  }
  return big ? std::exp(log_example_loss(s, y)) : plain;
}

double exp_risk(const Matrix& scores, std::span<const Label> labels) {
  if (scores.rows() != labels.size()) throw std::invalid_argument("exp_risk: size mismatch");
  const std::size_t m = labels.size();
  std::vector<double> logs(m);
  double mx = -std::numeric_limits<double>::infinity();
  bool big = false;
  for (std::size_t i = 0; i < m; ++i) {
    logs[i] = log_example_loss(scores.row(i), labels[i]);
    mx = std::max(mx, logs[i]);
    for (std::size_t l = 0; l < scores.cols(); ++l)
      if (std::fabs(scores(i, l) - scores(i, labels[i])) > 700.0) big = true;
  }
  if (!big) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += example_exp_loss(scores.row(i), labels[i]);
    return s / static_cast<double>(m);
  }
  double acc = 0.0;
  for (double v : logs) acc += std::exp(v - mx);
  return std::exp(mx + std::log(acc / static_cast<double>(m)));
}

double exp_risk(const ScoringFunction& f, const Dataset& data) { return exp_risk(f.scores(data), data.labels()); }

}  // namespace mcboost

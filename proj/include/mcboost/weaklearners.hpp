#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mcboost/core.hpp"

namespace mcboost {

struct LearnerResult {
  Hypothesis hypothesis;
  std::vector<Label> predictions;       // on the training set
  std::optional<std::size_t> index;     // position in a finite space, when there is one
};

class WeakLearner {
 public:
  virtual ~WeakLearner() = default;
  virtual LearnerResult learn(const Dataset& data, const Matrix& cost) const = 0;
  virtual std::string name() const = 0;
};

// argmin_j C.1_{h_j}; costs within 1e-12 (relative to sum_i max_l |C(i,l)|) of the minimum tie,
// and ties go to the lowest index.
std::size_t best_response(const HypothesisSpace& space, const Matrix& cost);

class BestResponseLearner final : public WeakLearner {
 public:
  explicit BestResponseLearner(HypothesisSpace space);
  LearnerResult learn(const Dataset& data, const Matrix& cost) const override;
  std::string name() const override { return "best-response"; }
  const HypothesisSpace& space() const { return space_; }

 private:
  HypothesisSpace space_;
  std::vector<Hypothesis> hypotheses_;
};

enum class SplitCriterion { kCost, kInfoGain };

struct TreeNode {
  bool leaf = true;
  Label label = 0;
  std::size_t feature = 0;
  bool categorical = false;
  double threshold = 0.0;     // numeric: left when x <= threshold
  std::string category;       // categorical: left when x == category
  int left = -1;
  int right = -1;
};

// Flat binary tree; node 0 is the root.
class Tree final : public WeakClassifier {
 public:
  explicit Tree(std::vector<TreeNode> nodes);
  Label predict(const Dataset& data, std::size_t i) const override;
  std::string describe() const override;
  std::size_t size() const { return nodes_.size(); }
  const std::vector<TreeNode>& nodes() const { return nodes_; }

 private:
  std::vector<TreeNode> nodes_;
};

Tree greedy_tree(const Dataset& data, const Matrix& cost, std::size_t max_size, SplitCriterion criterion);
Tree stump(const Dataset& data, const Matrix& cost);

// Sum_i C(i, h(i)) over the training set.
double tree_cost(const Tree& tree, const Dataset& data, const Matrix& cost);

class TreeLearner final : public WeakLearner {
 public:
  TreeLearner(std::size_t max_size, SplitCriterion criterion);
  LearnerResult learn(const Dataset& data, const Matrix& cost) const override;
  std::string name() const override;

 private:
  std::size_t max_size_;
  SplitCriterion criterion_;
};

}  // namespace mcboost

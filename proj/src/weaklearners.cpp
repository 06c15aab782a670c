#include "mcboost/weaklearners.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "mcboost/kernels.hpp"

namespace mcboost {

std::size_t best_response(const HypothesisSpace& space, const Matrix& cost) {
  if (space.empty()) throw std::invalid_argument("best_response: empty hypothesis space");
  std::vector<double> costs(space.size());
  kernels::hypothesis_costs_parallel(space, cost, costs);
  double scale = 0.0;
  for (std::size_t i = 0; i < cost.rows(); ++i) {
    double mx = 0.0;
    for (double v : cost.row(i)) mx = std::max(mx, std::fabs(v));
    scale += mx;
  }
  const double lo = *std::min_element(costs.begin(), costs.end());
  const double tol = 1e-12 * scale;
  for (std::size_t j = 0; j < costs.size(); ++j)
    if (costs[j] <= lo + tol) return j;
  return 0;
}

BestResponseLearner::BestResponseLearner(HypothesisSpace space) : space_(std::move(space)) {
  if (space_.empty()) throw std::invalid_argument("BestResponseLearner: empty hypothesis space");
  hypotheses_.reserve(space_.size());
  for (const auto& h : space_) hypotheses_.push_back(std::make_shared<TableClassifier>(h));
}

LearnerResult BestResponseLearner::learn(const Dataset& data, const Matrix& cost) const {
  if (cost.rows() != data.m()) throw std::invalid_argument("BestResponseLearner: cost rows != m");
  std::size_t j = best_response(space_, cost);
  return {hypotheses_[j], space_[j], j};
}

Tree::Tree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw std::invalid_argument("Tree: no nodes");
  for (const auto& n : nodes_) {
    if (n.leaf) continue;
    if (n.left <= 0 || n.right <= 0 || static_cast<std::size_t>(n.left) >= nodes_.size() ||
        static_cast<std::size_t>(n.right) >= nodes_.size())
      throw std::invalid_argument("Tree: bad child index");
  }
}

Label Tree::predict(const Dataset& data, std::size_t i) const {
  const TreeNode* n = &nodes_[0];
  while (!n->leaf) {
    const FeatureColumn& col = data.column(n->feature);
    bool go_left;
    if (n->categorical) {
      if (col.kind != FeatureKind::kCategorical) throw std::invalid_argument("Tree: feature kind mismatch");
      go_left = col.levels[static_cast<std::size_t>(col.codes[i])] == n->category;
    } else {
      if (col.kind != FeatureKind::kNumeric) throw std::invalid_argument("Tree: feature kind mismatch");
      go_left = col.numeric[i] <= n->threshold;
    }
    n = &nodes_[static_cast<std::size_t>(go_left ? n->left : n->right)];
  }
  return n->label;
}

std::string Tree::describe() const { return "tree(" + std::to_string(nodes_.size()) + ")"; }

double tree_cost(const Tree& tree, const Dataset& data, const Matrix& cost) {
  double s = 0.0;
  for (std::size_t i = 0; i < data.m(); ++i) s += cost.at(i, tree.predict(data, i));
  return s;
}

namespace {

// Additive per-leaf statistics: cost column sums (COST) or weighted label counts (INFO_GAIN).
struct Stats {
  std::vector<double> v;
  double mass = 0.0;  // sum of |C| entries or of weights; used for tolerances
};

class Grower {
 public:
  Grower(const Dataset& data, const Matrix& cost, SplitCriterion criterion)
      : data_(data), cost_(cost), crit_(criterion), k_(data.k()) {
    if (cost.rows() != data.m() || cost.cols() != data.k())
      throw std::invalid_argument("greedy_tree: cost matrix shape mismatch");
    if (crit_ == SplitCriterion::kInfoGain) {
      weights_.resize(data.m());
      for (std::size_t i = 0; i < data.m(); ++i) {
        Label y = data.label(i);
        double w = 0.0;
        for (std::size_t l = 0; l < k_; ++l)
          if (l != y) w += cost(i, l) - cost(i, y);
        weights_[i] = std::max(0.0, w / static_cast<double>(k_ - 1));
      }
    }
  }

  void add(Stats& s, std::size_t i, double sign) const {
    if (crit_ == SplitCriterion::kCost) {
      for (std::size_t l = 0; l < k_; ++l) {
        s.v[l] += sign * cost_(i, l);
        s.mass += std::fabs(cost_(i, l));
      }
    } else {
      s.v[data_.label(i)] += sign * weights_[i];
      s.mass += weights_[i];
    }
  }

  Stats stats(const std::vector<std::size_t>& idx) const {
    Stats s{std::vector<double>(k_, 0.0), 0.0};
    for (std::size_t i : idx) add(s, i, 1.0);
    return s;
  }

  // Quantity the splits try to reduce.
  double score(const Stats& s) const {
    if (crit_ == SplitCriterion::kCost) return *std::min_element(s.v.begin(), s.v.end());
    double total = 0.0;
    for (double h : s.v) total += std::max(0.0, h);
    if (total <= 0.0) return 0.0;
    double imp = 0.0;
    for (double h : s.v)
      if (h > 0.0) imp += h * std::log(total / h);
    return imp;
  }

  Label leaf_label(const std::vector<std::size_t>& idx) const {
    Stats s = stats(idx);
    if (crit_ == SplitCriterion::kInfoGain && s.mass > 0.0) {
      return static_cast<Label>(std::max_element(s.v.begin(), s.v.end()) - s.v.begin());
    }
    if (crit_ == SplitCriterion::kInfoGain) {
      Stats c{std::vector<double>(k_, 0.0), 0.0};
      for (std::size_t i : idx)
        for (std::size_t l = 0; l < k_; ++l) c.v[l] += cost_(i, l);
      return static_cast<Label>(std::min_element(c.v.begin(), c.v.end()) - c.v.begin());
    }
    return static_cast<Label>(std::min_element(s.v.begin(), s.v.end()) - s.v.begin());
  }

  struct Split {
    double gain = 0.0;
    std::size_t feature = 0;
    bool categorical = false;
    double threshold = 0.0;
    int category = -1;
  };

  std::optional<Split> best_split(const std::vector<std::size_t>& idx) const {
    if (idx.size() < 2) return std::nullopt;
    const Stats total = stats(idx);
    const double parent = score(total);
    const double tol = 1e-12 * std::max(total.mass, 1e-300);
    std::optional<Split> best;
    double best_gain = tol;
    for (std::size_t f = 0; f < data_.num_features(); ++f) {
      const FeatureColumn& col = data_.column(f);
      if (col.kind == FeatureKind::kNumeric) {
        std::vector<std::size_t> order(idx);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return col.numeric[a] < col.numeric[b]; });
        Stats left{std::vector<double>(k_, 0.0), 0.0};
        for (std::size_t p = 0; p + 1 < order.size(); ++p) {
          add(left, order[p], 1.0);
          double a = col.numeric[order[p]], b = col.numeric[order[p + 1]];
          if (!(a < b)) continue;
          Stats right{total.v, 0.0};
          for (std::size_t l = 0; l < k_; ++l) right.v[l] -= left.v[l];
          double gain = parent - (score(left) + score(right));
          if (gain > best_gain) {
            best_gain = gain;
            best = Split{gain, f, false, a + (b - a) / 2.0, -1};
          }
        }
      } else {
        std::vector<Stats> per(col.levels.size(), Stats{std::vector<double>(k_, 0.0), 0.0});
        std::vector<std::size_t> counts(col.levels.size(), 0);
        for (std::size_t i : idx) {
          auto c = static_cast<std::size_t>(col.codes[i]);
          add(per[c], i, 1.0);
          ++counts[c];
        }
        for (std::size_t c = 0; c < per.size(); ++c) {
          if (counts[c] == 0 || counts[c] == idx.size()) continue;
          Stats right{total.v, 0.0};
          for (std::size_t l = 0; l < k_; ++l) right.v[l] -= per[c].v[l];
          double gain = parent - (score(per[c]) + score(right));
          if (gain > best_gain) {
            best_gain = gain;
            best = Split{gain, f, true, 0.0, static_cast<int>(c)};
          }
        }
      }
    }
    return best;
  }

  bool goes_left(const Split& s, std::size_t i) const {
    const FeatureColumn& col = data_.column(s.feature);
    if (s.categorical) return col.codes[i] == s.category;
    return col.numeric[i] <= s.threshold;
  }

  Tree grow(std::size_t max_size) {
    if (max_size < 1) throw std::invalid_argument("greedy_tree: max_size must be >= 1");
    std::vector<std::size_t> all(data_.m());
    std::iota(all.begin(), all.end(), 0);
    std::vector<TreeNode> nodes(1);
    nodes[0].label = leaf_label(all);

    struct Open {
      int node;
      std::vector<std::size_t> idx;
      std::optional<Split> split;
    };
    std::vector<Open> open;
    open.push_back({0, all, best_split(all)});

    while (nodes.size() + 2 <= max_size) {
      int pick = -1;
      double gain = 0.0;
      for (std::size_t o = 0; o < open.size(); ++o)
        if (open[o].split && open[o].split->gain > gain) {
          gain = open[o].split->gain;
          pick = static_cast<int>(o);
        }
      if (pick < 0) break;
      Open cur = std::move(open[static_cast<std::size_t>(pick)]);
      open.erase(open.begin() + pick);
      const Split& s = *cur.split;
      std::vector<std::size_t> li, ri;
      for (std::size_t i : cur.idx) (goes_left(s, i) ? li : ri).push_back(i);

      TreeNode& parent = nodes[static_cast<std::size_t>(cur.node)];
      parent.leaf = false;
      parent.feature = s.feature;
      parent.categorical = s.categorical;
      parent.threshold = s.threshold;
      if (s.categorical) parent.category = data_.column(s.feature).levels[static_cast<std::size_t>(s.category)];
      const int lnode = static_cast<int>(nodes.size());
      parent.left = lnode;
      parent.right = lnode + 1;
      TreeNode l, r;
      l.label = leaf_label(li);
      r.label = leaf_label(ri);
      nodes.push_back(l);
      nodes.push_back(r);
      auto lsplit = best_split(li);
      auto rsplit = best_split(ri);
      open.push_back({lnode, std::move(li), lsplit});
      open.push_back({lnode + 1, std::move(ri), rsplit});
    }
    return Tree(std::move(nodes));
  }

 private:
  const Dataset& data_;
  const Matrix& cost_;
  SplitCriterion crit_;
  std::size_t k_;
  std::vector<double> weights_;
};

}  // namespace

Tree greedy_tree(const Dataset& data, const Matrix& cost, std::size_t max_size, SplitCriterion criterion) {
  return Grower(data, cost, criterion).grow(max_size);
}

Tree stump(const Dataset& data, const Matrix& cost) { return greedy_tree(data, cost, 3, SplitCriterion::kCost); }

TreeLearner::TreeLearner(std::size_t max_size, SplitCriterion criterion) : max_size_(max_size), criterion_(criterion) {
  if (max_size < 1) throw std::invalid_argument("TreeLearner: max_size must be >= 1");
}

LearnerResult TreeLearner::learn(const Dataset& data, const Matrix& cost) const {
  auto tree = std::make_shared<Tree>(greedy_tree(data, cost, max_size_, criterion_));
  auto preds = predict_all(*tree, data);
  return {std::move(tree), std::move(preds), std::nullopt};
}

std::string TreeLearner::name() const {
  return std::string(criterion_ == SplitCriterion::kCost ? "greedy" : "greedy-info") + "(" +
         std::to_string(max_size_) + ")";
}

}  // namespace mcboost

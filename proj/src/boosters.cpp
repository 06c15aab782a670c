#include "mcboost/boosters.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <stdexcept>

#include "mcboost/conditions.hpp"

namespace mcboost {

std::uint64_t digest(const Matrix& m) {
  std::uint64_t h = 1469598103934665603ull;
  for (double v : m.data()) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  return h;
}

double alpha_approx(double delta) { return 0.5 * std::log((1.0 + delta) / (1.0 - delta)); }

double alpha_exact(double a_plus, double a_minus) { return 0.5 * std::log(a_plus / a_minus); }

double edge_minimal(const Matrix& cost, std::span<const Label> predictions, double z) {
  if (!(z > 0.0)) throw std::invalid_argument("edge_minimal: Z must be positive");
  if (cost.rows() != predictions.size()) throw std::invalid_argument("edge_minimal: size mismatch");
  double ch = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) ch += cost.at(i, predictions[i]);
  return -ch / z;
}

double edge_minimal(const Matrix& f, std::span<const Label> labels, std::span<const Label> predictions) {
  Matrix cost;
  std::vector<double> row_loss(labels.size());
  kernels::adaptive_cost_serial(f, labels, cost, row_loss);
  double z = 0.0;
  for (double v : row_loss) z += v;
  return edge_minimal(cost, predictions, z);
}

static void check_drop_domain(double a_plus, double a_minus, double z_prev, double delta) {
  const double tol = 1e-12 * std::max(1.0, z_prev);
  if (!(a_minus >= 0.0) || a_minus > a_plus + tol || a_plus > z_prev + tol || a_plus + a_minus > z_prev + tol)
    throw std::invalid_argument("drop_factor_exact: need 0 <= A- <= A+ and A+ + A- <= Z");
  if (std::fabs(delta - (a_plus - a_minus) / z_prev) > 1e-9)
    throw std::invalid_argument("drop_factor_exact: delta != (A+ - A-) / Z");
}

double drop_factor_exact(double a_plus, double a_minus, double z_prev, double delta) {
  check_drop_domain(a_plus, a_minus, z_prev, delta);
  const double c = (a_plus + a_minus) / z_prev;
  return (1.0 - c) + std::sqrt(std::max(0.0, c * c - delta * delta));
}

double drop_factor_minus_form(double a_plus, double a_minus, double z_prev, double delta) {
  check_drop_domain(a_plus, a_minus, z_prev, delta);
  const double c = (a_plus + a_minus) / z_prev;
  return (1.0 - c) - std::sqrt(std::max(0.0, c * c - delta * delta));
}

namespace {

double sum(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

BoostRun adaboost_mm(const Dataset& data, std::size_t T, const WeakLearner& learner, StepRule rule) {
  const std::size_t m = data.m(), k = data.k();
  auto labels = data.labels();
  BoostRun run;
  run.scoring = ScoringFunction(k);
  Matrix f(m, k, 0.0), cost(m, k);
  std::vector<double> row_loss(m);
  kernels::adaptive_cost_parallel(f, labels, cost, row_loss);
  double z = sum(row_loss);
  run.initial_loss = z;

  for (std::size_t t = 1; t <= T; ++t) {
    LearnerResult res = learner.learn(data, cost);
    if (res.predictions.size() != m) throw std::logic_error("adaboost_mm: learner returned wrong prediction count");
    RoundRecord rec;
    rec.round = t;
    rec.classifier = res.index;
    rec.cost_digest = digest(cost);
    rec.loss_before = z;
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < m; ++i) {
      Label h = res.predictions[i];
      if (h == labels[i]) {
        rec.a_plus += row_loss[i];
      } else {
        rec.a_minus += cost(i, h);
        ++wrong;
      }
    }
    rec.edge = (rec.a_plus - rec.a_minus) / z;
    if (rec.a_minus <= 0.0) {
      rec.alpha = kAlphaMax;
      rec.clamped = true;
      run.separated = wrong == 0;
    } else if (rec.edge <= 0.0) {
      rec.alpha = 0.0;
      rec.flagged = true;
    } else {
      rec.alpha = rule == StepRule::kApprox ? alpha_approx(rec.edge) : alpha_exact(rec.a_plus, rec.a_minus);
      if (rec.alpha > kAlphaMax) {
        rec.alpha = kAlphaMax;
        rec.clamped = true;
      }
    }
    run.scoring.add(res.hypothesis, rec.alpha);
    if (rec.alpha > 0.0) {
      for (std::size_t i = 0; i < m; ++i) f(i, res.predictions[i]) += rec.alpha;
      kernels::adaptive_cost_parallel(f, labels, cost, row_loss);
      z = sum(row_loss);
      if (!std::isfinite(z)) throw std::overflow_error("adaboost_mm: exponential loss overflowed");
    }
    rec.loss = z;
    rec.train_error = training_error(f, labels);
    run.rounds.push_back(rec);
    if (run.separated) break;
  }
  run.train_scores = std::move(f);
  return run;
}

namespace {

// Potentials for rows of a fixed baseline, cached by (distinct row distribution, t, state).
class RowPotentials {
 public:
  RowPotentials(const Dataset& data, const Baseline& baseline, const LossSpec& loss) : loss_(loss), k_(data.k()) {
    const Matrix& b = baseline.entries;
    if (b.rows() != data.m() || b.cols() != data.k()) throw std::invalid_argument("os_boost_fixed: baseline shape");
    std::map<std::vector<double>, std::size_t> ids;
    for (std::size_t i = 0; i < data.m(); ++i) {
      Label y = data.label(i);
      if (!in_eor_simplex(b.row(i), y, baseline.gamma))
        throw std::invalid_argument("os_boost_fixed: baseline row " + std::to_string(i) + " is not edge-over-random");
      std::vector<double> row;
      row.push_back(b(i, y));
      for (std::size_t l = 0; l < k_; ++l)
        if (l != y) row.push_back(b(i, l));
      auto [it, inserted] = ids.try_emplace(row, dists_.size());
      if (inserted) dists_.push_back(EorDistribution{row, baseline.gamma});
      row_id_.push_back(it->second);
    }
  }

  // phi^{b_i}_t(s) with s given in original label order.
  double operator()(std::size_t i, Label y, int t, std::span<const int> s) {
    std::vector<int> key;
    key.reserve(k_ + 2);
    key.push_back(static_cast<int>(row_id_[i]));
    key.push_back(t);
    key.push_back(s[y]);
    for (std::size_t l = 0; l < k_; ++l)
      if (l != y) key.push_back(s[l]);
    // Potentials depend on differences from the true coordinate only.
    const int base = key[2];
    for (std::size_t p = 2; p < key.size(); ++p) key[p] -= base;
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    std::span<const int> perm(key.data() + 2, k_);
    double v = potential_fixed(dists_[row_id_[i]], loss_, t, perm);
    cache_.emplace(std::move(key), v);
    return v;
  }

 private:
  LossSpec loss_;
  std::size_t k_;
  std::vector<EorDistribution> dists_;
  std::vector<std::size_t> row_id_;
  std::map<std::vector<int>, double> cache_;
};

}  // namespace

BoostRun os_boost_fixed(const Dataset& data, const Baseline& baseline, const LossSpec& loss, std::size_t T,
                        const WeakLearner& learner) {
  const std::size_t m = data.m(), k = data.k();
  auto labels = data.labels();
  RowPotentials pot(data, baseline, loss);
  const double alpha = loss.kind == LossKind::kExp ? loss.eta : 1.0;
  const int horizon = static_cast<int>(T);

  BoostRun run;
  run.scoring = ScoringFunction(k);
  std::vector<std::vector<int>> s(m, std::vector<int>(k, 0));
  Matrix scores(m, k, 0.0);

  double avg = 0.0;
  for (std::size_t i = 0; i < m; ++i) avg += pot(i, labels[i], horizon, s[i]);
  avg /= static_cast<double>(m);
  run.initial_loss = avg;

  Matrix cost(m, k);
  for (std::size_t t = 0; t < T; ++t) {
    const int remaining = horizon - static_cast<int>(t) - 1;
    double scale = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t l = 0; l < k; ++l) {
        ++s[i][l];
        cost(i, l) = pot(i, labels[i], remaining, s[i]);
        --s[i][l];
        scale += std::fabs(cost(i, l));
      }
    }
    LearnerResult res = learner.learn(data, cost);
    if (res.predictions.size() != m) throw std::logic_error("os_boost_fixed: learner returned wrong prediction count");
    RoundRecord rec;
    rec.round = t + 1;
    rec.classifier = res.index;
    rec.cost_digest = digest(cost);
    rec.alpha = alpha;
    rec.loss_before = avg;
    rec.edge = edge(cost, res.predictions, baseline.entries);
    rec.flagged = rec.edge < -1e-12 * std::max(1.0, scale);
    double next = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      Label h = res.predictions[i];
      next += cost(i, h);
      ++s[i][h];
      scores(i, h) += alpha;
    }
    avg = next / static_cast<double>(m);
    rec.loss = avg;
    rec.train_error = training_error(scores, labels);
    run.scoring.add(res.hypothesis, alpha);
    run.rounds.push_back(rec);
  }
  run.train_scores = std::move(scores);
  return run;
}

MislabelTransform transform_mislabel(const Dataset& data, const HypothesisSpace& space) {
  MislabelTransform out;
  out.data.m = data.m();
  out.data.k = data.k();
  for (std::size_t i = 0; i < data.m(); ++i)
    for (Label l = 0; l < data.k(); ++l)
      if (l != data.label(i)) out.data.triples.push_back({i, data.label(i), l});
  out.space.reserve(space.size());
  for (const auto& h : space) {
    if (h.size() != data.m()) throw std::invalid_argument("transform_mislabel: prediction vector has wrong length");
    std::vector<std::int8_t> ht(out.data.triples.size());
    for (std::size_t r = 0; r < ht.size(); ++r) {
      const auto& tr = out.data.triples[r];
      Label p = h[tr.example];
      ht[r] = static_cast<std::int8_t>((p == tr.l ? 1 : 0) - (p == tr.y ? 1 : 0));
    }
    out.space.push_back(std::move(ht));
  }
  return out;
}

std::size_t MaxEdgeLearner::choose(const TransformedSpace& space, std::span<const double> weights) const {
  if (space.empty()) throw std::invalid_argument("MaxEdgeLearner: empty space");
  std::vector<double> corr(space.size());
  kernels::weighted_correlation_parallel(space, weights, corr);
  const double total = sum(weights);
  const double hi = *std::max_element(corr.begin(), corr.end());
  const double tol = 1e-12 * total;
  for (std::size_t j = 0; j < corr.size(); ++j)
    if (corr[j] >= hi - tol) return j;
  return 0;
}

BinaryRun adaboost_binary(const MislabelDataset& data, const TransformedSpace& space, std::size_t T,
                          const BinaryWeakLearner& learner) {
  const std::size_t n = data.triples.size();
  BinaryRun run;
  run.scores.assign(n, 0.0);
  std::vector<double> w(n);
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t r = 0; r < n; ++r) w[r] = std::exp(run.scores[r]);
    const double total = sum(w);
    std::size_t j = learner.choose(space, w);
    const auto& h = space.at(j);
    double agree = 0.0, disagree = 0.0;
    bool all_negative = true;
    for (std::size_t r = 0; r < n; ++r) {
      if (h[r] < 0) agree += w[r];
      if (h[r] > 0) disagree += w[r];
      if (h[r] >= 0) all_negative = false;
    }
    BinaryRound rec{j, (agree - disagree) / total, 0.0, total, total};
    if (disagree <= 0.0) {
      rec.alpha = kAlphaMax;
      rec.clamped = true;
      run.separated = all_negative;
    } else if (rec.edge > 0.0) {
      rec.alpha = std::min(kAlphaMax, alpha_approx(rec.edge));
      rec.clamped = rec.alpha == kAlphaMax;
    }
    if (rec.alpha > 0.0) {
      for (std::size_t r = 0; r < n; ++r) run.scores[r] += rec.alpha * static_cast<double>(h[r]);
      double after = 0.0;
      for (std::size_t r = 0; r < n; ++r) after += std::exp(run.scores[r]);
      rec.loss = after;
    }
    run.rounds.push_back(rec);
    if (run.separated) break;
  }
  return run;
}

double binary_risk(const MislabelDataset& data, std::span<const double> scores) {
  if (scores.size() != data.triples.size()) throw std::invalid_argument("binary_risk: size mismatch");
  double s = 0.0;
  for (double v : scores) s += std::exp(v);
  return s / static_cast<double>(data.m * (data.k - 1));
}

std::vector<double> transform_scores(const MislabelDataset& data, const Matrix& scores) {
  std::vector<double> out;
  out.reserve(data.triples.size());
  for (const auto& tr : data.triples) out.push_back(scores.at(tr.example, tr.l) - scores.at(tr.example, tr.y));
  return out;
}

}  // namespace mcboost

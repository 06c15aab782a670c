#include <cmath>
#include <stdexcept>

#include "mcboost/conditions.hpp"

namespace mcboost {

Fixture figure1_fixture() {
  Dataset data = Dataset::labels_only({0, 1}, 3);
  HypothesisSpace space = {{0, 0}, {1, 1}};
  Matrix c{{-1.0, 1.0, 0.0}, {1.0, -1.0, 0.0}};
  return {std::move(data), std::move(space), CostMatrix{std::move(c), CostFamily::kUnconstrained}};
}

Fixture window_fixture(std::size_t m, double gamma_prime, std::size_t k, std::optional<Matrix> baseline) {
  if (!(gamma_prime > 0.0) || static_cast<double>(m) <= 1.0 / gamma_prime)
    throw std::invalid_argument("window_fixture: need m > 1/gamma'");
  if (k < 2) throw std::invalid_argument("window_fixture: need k >= 2");
  std::vector<Label> labels(m);
  for (std::size_t i = 0; i < m; ++i) labels[i] = i % k;
  Matrix b = baseline ? std::move(*baseline)
                      : uniform_baseline(labels, k, std::min(0.999999, k * gamma_prime)).entries;
  if (b.rows() != m || b.cols() != k) throw std::invalid_argument("window_fixture: baseline shape");

  std::vector<Label> yhat(m);
  for (std::size_t i = 0; i < m; ++i) {
    Label best = labels[i] == 0 ? 1 : 0;
    for (std::size_t l = 0; l < k; ++l)
      if (l != labels[i] && b(i, l) < b(i, best)) best = l;
    yhat[i] = best;
  }

  const auto window = static_cast<std::size_t>(std::floor(static_cast<double>(m) * (0.5 + gamma_prime)));
  HypothesisSpace space(m, std::vector<Label>(m));
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t offset = (i + m - j) % m;
      space[j][i] = offset < window ? labels[i] : yhat[i];
    }

  Matrix c(m, k, 0.0);
  for (std::size_t i = 0; i < m; ++i) c.at(i, yhat[i]) = 1.0;
  Dataset data = Dataset::labels_only(labels, k);
  return {std::move(data), std::move(space), CostMatrix{std::move(c), CostFamily::kEor}};
}

namespace {

void subsets(std::size_t m, std::size_t s, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == s) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i + (s - cur.size()) <= m; ++i) {
    cur.push_back(i);
    subsets(m, s, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

Fixture mh_overdemand_fixture(std::size_t k, double gamma, std::size_t m) {
  if (k < 2) throw std::invalid_argument("mh_overdemand_fixture: need k >= 2");
  double size = (1.0 / static_cast<double>(k) + gamma) * static_cast<double>(m);
  double rounded = std::round(size);
  if (std::fabs(size - rounded) > 1e-9 || rounded < 1.0 || rounded > static_cast<double>(m))
    throw std::invalid_argument("mh_overdemand_fixture: (1/k + gamma) m must be an integer in [1, m]");
  const auto s = static_cast<std::size_t>(rounded);

  double count = 1.0;
  for (std::size_t r = 0; r < s; ++r) count = count * static_cast<double>(m - r) / static_cast<double>(r + 1);
  if (count > 5000.5) throw std::invalid_argument("mh_overdemand_fixture: more than 5000 subsets; use a smaller m");
  std::vector<std::vector<std::size_t>> subs;
  std::vector<std::size_t> cur;
  subsets(m, s, 0, cur, subs);

  HypothesisSpace space;
  for (std::size_t j = 0; j < subs.size(); ++j) {
    std::vector<Label> pred(m);
    for (std::size_t i = 0; i < m; ++i) pred[i] = 1 + (i + j) % (k - 1);
    for (std::size_t i : subs[j]) pred[i] = 0;
    space.push_back(std::move(pred));
  }
  Matrix c(m, k, 0.0);
  for (std::size_t i = 0; i < m; ++i) c.at(i, 0) = -1.0;
  return {Dataset::labels_only(std::vector<Label>(m, 0), k), std::move(space),
          CostMatrix{std::move(c), CostFamily::kMH}};
}

double mh_overdemand_violation(const Fixture& f, double gamma) {
  Baseline b = mh_baseline(f.data.labels(), f.data.k(), gamma);
  const Matrix& c = f.cost.entries;
  Matrix h = indicator(f.space.front(), f.data.k());
  return inner(c, h - b.entries) / static_cast<double>(f.data.m());
}

}  // namespace mcboost

#include "mcboost/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mcboost {

LossSpec LossSpec::exp(double eta) {
  if (!(eta >= 0.0)) throw std::invalid_argument("exp loss needs eta >= 0");
  return {LossKind::kExp, eta};
}

double loss_value(const LossSpec& loss, std::span<const int> s) {
  if (s.size() < 2) throw std::invalid_argument("loss_value: need k >= 2");
  if (loss.kind == LossKind::kZeroOne) {
    for (std::size_t l = 1; l < s.size(); ++l)
      if (s[l] >= s[0]) return 1.0;
    return 0.0;
  }
  double v = 0.0;
  for (std::size_t l = 1; l < s.size(); ++l) v += std::exp(loss.eta * static_cast<double>(s[l] - s[0]));
  return v;
}

EorDistribution EorDistribution::make(std::vector<double> b, double gamma, double tol) {
  if (b.size() < 2) throw std::invalid_argument("EorDistribution: need k >= 2");
  double sum = 0.0, other = 0.0;
  for (std::size_t l = 0; l < b.size(); ++l) {
    if (b[l] < -tol) throw std::invalid_argument("EorDistribution: negative entry");
    sum += b[l];
    if (l > 0) other = std::max(other, b[l]);
  }
  if (std::fabs(sum - 1.0) > tol) throw std::invalid_argument("EorDistribution: entries must sum to 1");
  if (std::fabs(b[0] - gamma - other) > tol)
    throw std::invalid_argument("EorDistribution: b(true) - gamma must equal the largest wrong entry");
  return {std::move(b), gamma};
}

EorDistribution EorDistribution::biased_uniform(std::size_t k, double gamma) {
  if (k < 2) throw std::invalid_argument("EorDistribution: need k >= 2");
  std::vector<double> b(k, (1.0 - gamma) / static_cast<double>(k));
  b[0] += gamma;
  return {std::move(b), gamma};
}

double kappa(double gamma, double eta, std::size_t k) {
  const double kd = static_cast<double>(k);
  return 1.0 + ((1.0 - gamma) / kd) * (std::exp(eta) + std::exp(-eta) - 2.0) - (1.0 - std::exp(-eta)) * gamma;
}

static void check_state(const EorDistribution& b, int t, std::span<const int> s) {
  if (t < 0) throw std::invalid_argument("potential: t must be >= 0");
  if (s.size() != b.k()) throw std::invalid_argument("potential: state length != k");
}

double potential_exp_closed(const EorDistribution& b, double eta, int t, std::span<const int> s) {
  check_state(b, t, s);
  const double ep = std::exp(eta), em = std::exp(-eta);
  double v = 0.0;
  for (std::size_t l = 1; l < b.k(); ++l) {
    double a = 1.0 - (b.b[0] + b.b[l]) + ep * b.b[l] + em * b.b[0];
    v += std::pow(a, t) * std::exp(eta * static_cast<double>(s[l] - s[0]));
  }
  return v;
}

double potential_zeroone_dp(const EorDistribution& b, int t, std::span<const int> s) {
  check_state(b, t, s);
  if (t > 1000) throw std::invalid_argument("potential_zeroone_dp: t above 1000");
  const std::size_t k = b.k();
  const auto n_max = static_cast<std::size_t>(t);

  std::vector<std::vector<double>> binom(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    binom[n].assign(n + 1, 1.0);
    for (std::size_t x = 1; x < n; ++x) binom[n][x] = binom[n - 1][x - 1] + binom[n - 1][x];
  }
  std::vector<std::vector<double>> powers(k, std::vector<double>(n_max + 1, 1.0));
  for (std::size_t l = 0; l < k; ++l)
    for (std::size_t x = 1; x <= n_max; ++x) powers[l][x] = powers[l][x - 1] * b.b[l];

  // For each x_1, D(n) = probability mass (times arrangements) of n steps spread over the wrong
  // labels with every wrong coordinate staying strictly behind the true one.
  double correct = 0.0;
  std::vector<double> cur(n_max + 1), next(n_max + 1);
  for (std::size_t x1 = 0; x1 <= n_max; ++x1) {
    const std::size_t rest = n_max - x1;
    std::fill(cur.begin(), cur.end(), 0.0);
    cur[0] = 1.0;
    bool feasible = true;
    for (std::size_t l = 1; l < k && feasible; ++l) {
      long cap = static_cast<long>(x1) + s[0] - s[l] - 1;
      if (cap < 0) {
        feasible = false;
        break;
      }
      std::fill(next.begin(), next.end(), 0.0);
      for (std::size_t n = 0; n <= rest; ++n) {
        std::size_t top = std::min<std::size_t>(n, static_cast<std::size_t>(cap));
        double acc = 0.0;
        for (std::size_t x = 0; x <= top; ++x) acc += binom[n][x] * powers[l][x] * cur[n - x];
        next[n] = acc;
      }
      std::swap(cur, next);
    }
    if (!feasible) continue;
    correct += binom[n_max][x1] * powers[0][x1] * cur[rest];
  }
  return 1.0 - correct;
}

double potential_fixed(const EorDistribution& b, const LossSpec& loss, int t, std::span<const int> s) {
  if (loss.kind == LossKind::kExp) return potential_exp_closed(b, loss.eta, t, s);
  return potential_zeroone_dp(b, t, s);
}

double potential_oracle_bruteforce(const EorDistribution& b, const LossSpec& loss, int t, std::span<const int> s) {
  check_state(b, t, s);
  if (t > 8 || b.k() > 5) throw std::invalid_argument("potential_oracle_bruteforce: instance above t<=8, k<=5");
  std::vector<int> state(s.begin(), s.end());
  std::function<double(int, double)> walk = [&](int left, double prob) -> double {
    if (left == 0) return prob * loss_value(loss, state);
    double acc = 0.0;
    for (std::size_t l = 0; l < b.k(); ++l) {
      if (b.b[l] == 0.0) continue;
      ++state[l];
      acc += walk(left - 1, prob * b.b[l]);
      --state[l];
    }
    return acc;
  };
  return walk(t, 1.0);
}

std::size_t PotentialTable::KeyHash::operator()(const std::vector<int>& v) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int x : v) {
    h ^= static_cast<std::size_t>(static_cast<unsigned>(x)) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

PotentialTable::PotentialTable(std::size_t k, double gamma, LossSpec loss, std::size_t state_cap)
    : k_(k), gamma_(gamma), loss_(loss), cap_(state_cap) {
  if (k < 2) throw std::invalid_argument("PotentialTable: need k >= 2");
  if (!(gamma >= 0.0) || gamma >= 1.0) throw std::invalid_argument("PotentialTable: gamma must lie in [0, 1)");
}

MinimalValue PotentialTable::at(int t, std::span<const int> s) {
  if (t < 0) throw std::invalid_argument("PotentialTable: t must be >= 0");
  if (s.size() != k_) throw std::invalid_argument("PotentialTable: state length != k");
  std::vector<int> diffs(k_ - 1);
  for (std::size_t l = 1; l < k_; ++l) diffs[l - 1] = s[l] - s[0];
  return compute(t, diffs);
}

MinimalValue PotentialTable::compute(int t, std::vector<int>& diffs) {
  std::vector<int> key(diffs);
  std::sort(key.begin(), key.end());
  key.push_back(t);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  if (memo_.size() >= cap_) throw std::length_error("PotentialTable: state cap exceeded");

  MinimalValue out{0.0, k_};
  if (t == 0) {
    std::vector<int> s(k_, 0);
    std::copy(diffs.begin(), diffs.end(), s.begin() + 1);
    out.value = loss_value(loss_, s);
  } else {
    std::vector<int> child(diffs);
    for (int& d : child) --d;
    const double true_step = compute(t - 1, child).value;
    std::vector<double> sib(k_ - 1);
    for (std::size_t j = 0; j + 1 < k_; ++j) {
      child = diffs;
      ++child[j];
      sib[j] = compute(t - 1, child).value;
    }
    std::stable_sort(sib.begin(), sib.end(), std::greater<>());
    std::vector<double> ev(k_ + 1, 0.0);
    double best = -std::numeric_limits<double>::infinity();
    double top = 0.0;
    for (std::size_t a = 2; a <= k_; ++a) {
      top += sib[a - 2];
      const double w = (1.0 - gamma_) / static_cast<double>(a);
      ev[a] = (w + gamma_) * true_step + w * top;
      best = std::max(best, ev[a]);
    }
    const double tol = 1e-12 * std::max(1.0, std::fabs(best));
    out.value = best;
    for (std::size_t a = k_; a >= 2; --a)
      if (ev[a] >= best - tol) {
        out.degree = a;
        break;
      }
  }
  memo_.emplace(std::move(key), out);
  return out;
}

MinimalValue potential_minimal(double gamma, const LossSpec& loss, int t, std::span<const int> s) {
  PotentialTable table(s.size(), gamma, loss);
  return table.at(t, s);
}

std::vector<DegreeCell> degree_map(double gamma, const LossSpec& loss, int T, std::size_t k) {
  if (k != 3) throw std::invalid_argument("degree_map: only k = 3 is supported");
  if (T < 1) throw std::invalid_argument("degree_map: T must be >= 1");
  PotentialTable table(3, gamma, loss);
  std::vector<DegreeCell> cells;
  cells.reserve(static_cast<std::size_t>(T) * (2 * T + 1) * (2 * T + 1));
  for (int t = 1; t <= T; ++t)
    for (int v = -T; v <= T; ++v)
      for (int u = -T; u <= T; ++u) {
        int s[3] = {0, u, v};
        cells.push_back({u, v, t, table.at(t, s).degree});
      }
  return cells;
}

std::pair<double, double> minimal_vs_fixed_gap(double gamma, int T, std::size_t k) {
  std::vector<int> zero(k, 0);
  double minimal = potential_minimal(gamma, LossSpec::zero_one(), T, zero).value;
  double fixed = potential_zeroone_dp(EorDistribution::biased_uniform(k, gamma), T, zero);
  return {minimal, fixed};
}

}  // namespace mcboost

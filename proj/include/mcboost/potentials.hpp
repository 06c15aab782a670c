#pragma once

// Potentials work in the coordinate system where index 0 is the true label.

#include <cstddef>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mcboost {

enum class LossKind { kZeroOne, kExp };

struct LossSpec {
  LossKind kind = LossKind::kZeroOne;
  double eta = 0.0;

  static LossSpec zero_one() { return {LossKind::kZeroOne, 0.0}; }
  static LossSpec exp(double eta);
};

// L(s) with s[0] the true-label count. Zero-one counts ties as errors.
double loss_value(const LossSpec& loss, std::span<const int> s);

struct EorDistribution {
  std::vector<double> b;
  double gamma = 0.0;

  // Validates b(0) - gamma == max_{l>0} b(l), nonnegativity and unit mass.
  static EorDistribution make(std::vector<double> b, double gamma, double tol = 1e-9);
  static EorDistribution biased_uniform(std::size_t k, double gamma);
  std::size_t k() const { return b.size(); }
};

double kappa(double gamma, double eta, std::size_t k);

double potential_exp_closed(const EorDistribution& b, double eta, int t, std::span<const int> s);
double potential_zeroone_dp(const EorDistribution& b, int t, std::span<const int> s);
double potential_fixed(const EorDistribution& b, const LossSpec& loss, int t, std::span<const int> s);

// Enumerates all k^t walks; rejects t > 8 or k > 5.
double potential_oracle_bruteforce(const EorDistribution& b, const LossSpec& loss, int t, std::span<const int> s);

struct MinimalValue {
  double value;
  std::size_t degree;
};

// Memoized potentials for the minimal condition. Values depend only on s_l - s_0 and are
// symmetric in the wrong labels, so entries are keyed by t and the sorted differences.
class PotentialTable {
 public:
  static constexpr std::size_t kDefaultStateCap = 5'000'000;

  PotentialTable(std::size_t k, double gamma, LossSpec loss, std::size_t state_cap = kDefaultStateCap);

  MinimalValue at(int t, std::span<const int> s);
  std::size_t size() const { return memo_.size(); }
  std::size_t k() const { return k_; }
  double gamma() const { return gamma_; }
  const LossSpec& loss() const { return loss_; }

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<int>& v) const noexcept;
  };
  MinimalValue compute(int t, std::vector<int>& diffs);

  std::size_t k_;
  double gamma_;
  LossSpec loss_;
  std::size_t cap_;
  std::unordered_map<std::vector<int>, MinimalValue, KeyHash> memo_;
};

MinimalValue potential_minimal(double gamma, const LossSpec& loss, int t, std::span<const int> s);

struct DegreeCell {
  int u;  // s_2 - s_1
  int v;  // s_3 - s_1
  int t;  // remaining rounds
  std::size_t degree;
};

// All cells with u, v in [-T, T] for t = 1..T. Only k = 3 is supported.
std::vector<DegreeCell> degree_map(double gamma, const LossSpec& loss, int T, std::size_t k = 3);

// (phi_T(0) for the minimal condition, phi^u_T(0) at the gamma-biased uniform baseline), zero-one loss.
std::pair<double, double> minimal_vs_fixed_gap(double gamma, int T, std::size_t k);

}  // namespace mcboost

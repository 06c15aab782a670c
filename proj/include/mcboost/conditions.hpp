#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mcboost/core.hpp"

namespace mcboost {

enum class ConditionName { kSamme, kM1, kMH, kMR, kEorFixed, kMinimal };

const char* to_string(ConditionName n);

struct Condition {
  ConditionName name = ConditionName::kMinimal;
  CostFamily family = CostFamily::kEor;
  // Empty for kMinimal, which ranges over every edge-over-random baseline.
  std::optional<Baseline> baseline;
  double gamma = 0.0;
};

Baseline uniform_baseline(std::span<const Label> labels, std::size_t k, double gamma);
Baseline m1_baseline(std::span<const Label> labels, std::size_t k, double gamma);
Baseline mh_baseline(std::span<const Label> labels, std::size_t k, double gamma);
Baseline mr_baseline(std::span<const Label> labels, std::size_t k, double gamma);

// True when row b is a distribution with b(y) - gamma == max_{l != y} b(l).
bool in_eor_simplex(std::span<const double> b, Label y, double gamma, double tol = 1e-9);

// For kSamme the caller passes the already-mapped gamma = (1 - 1/k) gamma'.
// eor_rows is required for kEorFixed and ignored otherwise.
Condition make_condition(ConditionName name, double gamma, const Dataset& data,
                         std::optional<Matrix> eor_rows = std::nullopt, double tol = 1e-9);

// C.B - C.1_h; nonnegative iff h meets the constraint for this C.
double edge(const Matrix& cost, std::span<const Label> predictions, const Matrix& baseline);

enum class Verdict { kSatisfied, kViolated, kUndetermined };

const char* to_string(Verdict v);

struct GameValueReport {
  double value = 0.0;        // certified upper bound on the (1/m-normalized) game value
  double lower_bound = 0.0;  // certified lower bound
  double gap = 0.0;          // value - lower_bound
  std::vector<double> mixture;
  CostMatrix cost;           // cost matrix attaining lower_bound
  std::size_t iterations = 0;
  Verdict verdict = Verdict::kUndetermined;
};

inline constexpr double kVerdictTolerance = 1e-9;

GameValueReport solve_game(const HypothesisSpace& space, const Dataset& data, const Condition& cond,
                           std::size_t iters);

enum class Boostability { kYes, kNo, kUndetermined };

const char* to_string(Boostability b);

struct BoostabilityResult {
  Boostability answer = Boostability::kUndetermined;
  double margin = 0.0;        // best margin found (yes) or certified upper bound on it
  double margin_upper = 0.0;  // upper bound on the optimal margin
  std::vector<double> mixture;
  std::optional<CostMatrix> certificate;  // MR-family C with min_h C.1_h >= 0 (no)
};

// Minimum over examples of H_lambda(i,y_i) - max_{l != y_i} H_lambda(i,l).
double mixture_margin(const HypothesisSpace& space, std::span<const double> lambda, const Dataset& data);

BoostabilityResult is_boostable(const HypothesisSpace& space, const Dataset& data, std::size_t iters);

// Fixtures.
struct Fixture {
  Dataset data;
  HypothesisSpace space;
  CostMatrix cost;
};

// Two examples with labels 0 and 1, k = 3, h_1 always predicts 0 and h_2 always 1.
Fixture figure1_fixture();

// Window construction; wrong predictions go to argmin_{l != y_i} B(i,l) for the given
// baseline (U_gamma with gamma = k * gamma' when absent). Labels are i mod k.
Fixture window_fixture(std::size_t m, double gamma_prime, std::size_t k = 3,
                       std::optional<Matrix> baseline = std::nullopt);

// One classifier per (1/k + gamma) m subset, correct exactly on that subset. All labels are 0;
// classifier j predicts 1 + ((i + j) mod (k - 1)) on example i outside its subset.
Fixture mh_overdemand_fixture(std::size_t k, double gamma, std::size_t m);

// (1/m) C.(1_h - B^MH) for C = -1 on the true column; h ranges over the fixture space
// and the value is the same for each of them.
double mh_overdemand_violation(const Fixture& f, double gamma);

}  // namespace mcboost

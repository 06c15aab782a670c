#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "mcboost/core.hpp"
#include "mcboost/kernels.hpp"
#include "mcboost/potentials.hpp"
#include "mcboost/weaklearners.hpp"

namespace mcboost {

// Weight used when a round separates the data perfectly. e^-25 sits below the 1e-9 tolerance
// of the drop-factor check.
inline constexpr double kAlphaMax = 25.0;

enum class StepRule { kApprox, kExact };

struct RoundRecord {
  std::size_t round = 0;                  // 1-based
  std::optional<std::size_t> classifier;  // index in a finite space
  std::uint64_t cost_digest = 0;
  double edge = 0.0;         // delta_t for MM; C.B - C.1_h for OS
  double alpha = 0.0;
  double loss_before = 0.0;  // Z_{t-1} (MM) or average potential before the round (OS)
  double loss = 0.0;         // Z_t or average potential after the round
  double a_plus = 0.0;
  double a_minus = 0.0;
  bool flagged = false;      // non-positive edge: weight clamped at 0 (MM) or condition broken (OS)
  bool clamped = false;      // alpha clamped at kAlphaMax on perfect separation
  double train_error = 0.0;  // of the plurality vote after this round
};

struct BoostRun {
  std::vector<RoundRecord> rounds;
  ScoringFunction scoring{2};
  Matrix train_scores;
  double initial_loss = 0.0;
  bool separated = false;

  Label predict(const Dataset& data, std::size_t i) const { return plurality_predict(scoring, data, i); }
};

std::uint64_t digest(const Matrix& m);

double alpha_approx(double delta);
double alpha_exact(double a_plus, double a_minus);

// (-C.1_h) / Z for the adaptive cost matrix of state f.
double edge_minimal(const Matrix& cost, std::span<const Label> predictions, double z);
double edge_minimal(const Matrix& f, std::span<const Label> labels, std::span<const Label> predictions);

// Exact loss ratio Z_t / Z_{t-1} under the exact step: (1 - c) + sqrt(c^2 - delta^2),
// c = (A+ + A-) / Z_{t-1}.
double drop_factor_exact(double a_plus, double a_minus, double z_prev, double delta);

// The same ratio with the radical subtracted, as some printings give it.
double drop_factor_minus_form(double a_plus, double a_minus, double z_prev, double delta);

BoostRun adaboost_mm(const Dataset& data, std::size_t T, const WeakLearner& learner, StepRule rule);

// OS strategy for a fixed edge-over-random baseline. Alpha is 1 for zero-one loss and eta for
// exponential loss.
BoostRun os_boost_fixed(const Dataset& data, const Baseline& baseline, const LossSpec& loss, std::size_t T,
                        const WeakLearner& learner);

struct MislabelTriple {
  std::size_t example;
  Label y;
  Label l;
};

// Binary examples (x_i, y_i, l) with l != y_i; every binary label is -1.
struct MislabelDataset {
  std::vector<MislabelTriple> triples;
  std::size_t m = 0;
  std::size_t k = 0;
};

using kernels::TransformedSpace;

struct MislabelTransform {
  MislabelDataset data;
  TransformedSpace space;  // htilde_j(x, y, l) = 1[h_j(x) = l] - 1[h_j(x) = y]
};

MislabelTransform transform_mislabel(const Dataset& data, const HypothesisSpace& space);

class BinaryWeakLearner {
 public:
  virtual ~BinaryWeakLearner() = default;
  virtual std::size_t choose(const TransformedSpace& space, std::span<const double> weights) const = 0;
};

// Maximum weighted correlation; near-ties within 1e-12 of the total weight go to the lowest index.
class MaxEdgeLearner final : public BinaryWeakLearner {
 public:
  std::size_t choose(const TransformedSpace& space, std::span<const double> weights) const override;
};

struct BinaryRound {
  std::size_t classifier;
  double edge;
  double alpha;
  double loss_before;
  double loss;
  bool clamped = false;
};

struct BinaryRun {
  std::vector<BinaryRound> rounds;
  std::vector<double> scores;  // Ftilde per triple
  bool separated = false;
};

BinaryRun adaboost_binary(const MislabelDataset& data, const TransformedSpace& space, std::size_t T,
                          const BinaryWeakLearner& learner);

// (1 / (m (k-1))) sum over triples of exp(Ftilde).
double binary_risk(const MislabelDataset& data, std::span<const double> scores);

// Ftilde(x, y, l) = F(x, l) - F(x, y) for a multiclass score matrix.
std::vector<double> transform_scores(const MislabelDataset& data, const Matrix& scores);

}  // namespace mcboost

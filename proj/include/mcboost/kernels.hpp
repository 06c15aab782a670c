#pragma once

// Hot loops shared by the boosters and learners. Each kernel has a serial reference and an
// OpenMP version; both reduce in the same order per output element, so results are bitwise equal
// for any thread count.

#include <cstdint>
#include <span>
#include <vector>

#include "mcboost/core.hpp"
#include "mcboost/potentials.hpp"

namespace mcboost::kernels {

using TransformedSpace = std::vector<std::vector<std::int8_t>>;

// C(i,l) = exp(f(i,l) - f(i,y_i)) for l != y_i and minus their sum at y_i; row_loss[i] gets the sum.
void adaptive_cost_serial(const Matrix& f, std::span<const Label> labels, Matrix& cost, std::span<double> row_loss);
void adaptive_cost_parallel(const Matrix& f, std::span<const Label> labels, Matrix& cost, std::span<double> row_loss);

// out[j] = sum_i C(i, h_j(i)).
void hypothesis_costs_serial(const HypothesisSpace& space, const Matrix& cost, std::span<double> out);
void hypothesis_costs_parallel(const HypothesisSpace& space, const Matrix& cost, std::span<double> out);

// out[j] = -sum_r w_r htilde_j(r): weighted correlation with the all-negative binary labels.
void weighted_correlation_serial(const TransformedSpace& space, std::span<const double> w, std::span<double> out);
void weighted_correlation_parallel(const TransformedSpace& space, std::span<const double> w, std::span<double> out);

// phi^b_t(0) under zero-one loss for t = 0..T.
std::vector<double> zeroone_column_serial(const EorDistribution& b, int T);
std::vector<double> zeroone_column_parallel(const EorDistribution& b, int T);

}  // namespace mcboost::kernels

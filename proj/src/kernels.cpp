#include "mcboost/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace mcboost::kernels {

namespace {

inline void cost_row(const Matrix& f, std::size_t i, Label y, Matrix& cost, std::span<double> row_loss) {
  const std::size_t k = f.cols();
  double sum = 0.0;
  const double fy = f(i, y);
  for (std::size_t l = 0; l < k; ++l) {
    if (l == y) continue;
    double e = std::exp(f(i, l) - fy);
    cost(i, l) = e;
    sum += e;
  }
  cost(i, y) = -sum;
  row_loss[i] = sum;
}

void check_cost_shapes(const Matrix& f, std::span<const Label> labels, Matrix& cost, std::span<double> row_loss) {
  if (f.rows() != labels.size() || row_loss.size() != labels.size())
    throw std::invalid_argument("adaptive_cost: size mismatch");
  if (cost.rows() != f.rows() || cost.cols() != f.cols()) cost = Matrix(f.rows(), f.cols());
}

inline double hypothesis_cost(const std::vector<Label>& h, const Matrix& cost) {
  double s = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) s += cost(i, h[i]);
  return s;
}

inline double correlation(const std::vector<std::int8_t>& h, std::span<const double> w) {
  double s = 0.0;
  for (std::size_t r = 0; r < h.size(); ++r) s -= w[r] * static_cast<double>(h[r]);
  return s;
}

}  // namespace

void adaptive_cost_serial(const Matrix& f, std::span<const Label> labels, Matrix& cost, std::span<double> row_loss) {
  check_cost_shapes(f, labels, cost, row_loss);
  for (std::size_t i = 0; i < f.rows(); ++i) cost_row(f, i, labels[i], cost, row_loss);
}

void adaptive_cost_parallel(const Matrix& f, std::span<const Label> labels, Matrix& cost,
                            std::span<double> row_loss) {
  check_cost_shapes(f, labels, cost, row_loss);
  const auto m = static_cast<std::ptrdiff_t>(f.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < m; ++i)
    cost_row(f, static_cast<std::size_t>(i), labels[static_cast<std::size_t>(i)], cost, row_loss);
}

void hypothesis_costs_serial(const HypothesisSpace& space, const Matrix& cost, std::span<double> out) {
  if (out.size() != space.size()) throw std::invalid_argument("hypothesis_costs: size mismatch");
  for (std::size_t j = 0; j < space.size(); ++j) out[j] = hypothesis_cost(space[j], cost);
}

void hypothesis_costs_parallel(const HypothesisSpace& space, const Matrix& cost, std::span<double> out) {
  if (out.size() != space.size()) throw std::invalid_argument("hypothesis_costs: size mismatch");
  const auto n = static_cast<std::ptrdiff_t>(space.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < n; ++j)
    out[static_cast<std::size_t>(j)] = hypothesis_cost(space[static_cast<std::size_t>(j)], cost);
}

void weighted_correlation_serial(const TransformedSpace& space, std::span<const double> w, std::span<double> out) {
  if (out.size() != space.size()) throw std::invalid_argument("weighted_correlation: size mismatch");
  for (std::size_t j = 0; j < space.size(); ++j) out[j] = correlation(space[j], w);
}

void weighted_correlation_parallel(const TransformedSpace& space, std::span<const double> w,
                                   std::span<double> out) {
  if (out.size() != space.size()) throw std::invalid_argument("weighted_correlation: size mismatch");
  const auto n = static_cast<std::ptrdiff_t>(space.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < n; ++j)
    out[static_cast<std::size_t>(j)] = correlation(space[static_cast<std::size_t>(j)], w);
}

std::vector<double> zeroone_column_serial(const EorDistribution& b, int T) {
  std::vector<double> out(static_cast<std::size_t>(T) + 1);
  std::vector<int> zero(b.k(), 0);
  for (int t = 0; t <= T; ++t) out[static_cast<std::size_t>(t)] = potential_zeroone_dp(b, t, zero);
  return out;
}

std::vector<double> zeroone_column_parallel(const EorDistribution& b, int T) {
  std::vector<double> out(static_cast<std::size_t>(T) + 1);
  std::vector<int> zero(b.k(), 0);
#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t <= T; ++t) out[static_cast<std::size_t>(t)] = potential_zeroone_dp(b, t, zero);
  return out;
}

}  // namespace mcboost::kernels

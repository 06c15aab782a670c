#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mcboost/boosters.hpp"
#include "mcboost/core.hpp"
#include "mcboost/potentials.hpp"

namespace mcboost {

enum class Algorithm { kMmApprox, kMmExact, kOs };
enum class LearnerKind { kBestResponse, kStump, kGreedy, kGreedyInfo };

const char* to_string(Algorithm a);
const char* to_string(LearnerKind l);

struct WindowSpec {
  std::size_t m = 21;
  double gamma_prime = 0.1;
  std::size_t k = 3;
};

struct ExperimentConfig {
  std::string data_path;
  std::string label_column;  // empty: last column
  std::string test_path;     // explicit test file
  std::string split_path;    // explicit split: 0-based data row indices of the test set
  double split = 0.8;        // train fraction for the seeded random split
  Algorithm algo = Algorithm::kMmApprox;
  std::size_t rounds = 100;
  double gamma = 0.1;
  double eta = 0.1;
  LossKind loss = LossKind::kZeroOne;
  LearnerKind learner = LearnerKind::kStump;
  std::size_t tree_size = 5;
  std::uint64_t seed = 1;
  std::string out_dir;  // nothing is written when empty
  std::optional<WindowSpec> window;  // train on a window fixture instead of a CSV
};

void validate(const ExperimentConfig& cfg);

// Reads a headed CSV. Labels are numbered by first appearance unless label_order is given.
// Column kinds are written to log when it is non-null.
Dataset load_csv(const std::string& path, const std::string& label_column,
                 const std::vector<std::string>* label_order = nullptr, std::ostream* log = nullptr);

struct TrainTest {
  Dataset train;
  std::optional<Dataset> test;
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> test_rows;
};

// Seeded shuffle, then the first round(fraction * m) rows train.
TrainTest split_dataset(const Dataset& data, double train_fraction, std::uint64_t seed);
TrainTest split_by_file(const Dataset& data, const std::string& path);

struct ExperimentResult {
  BoostRun run;
  std::vector<double> test_curve;  // test error after each round, empty without a test set
  double train_error = 1.0;
  std::optional<double> test_error;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Independent runs, executed in parallel.
std::vector<ExperimentResult> run_experiments(const std::vector<ExperimentConfig>& cfgs);

// Throws std::logic_error when a run breaks the loss-contraction or error bounds.
void check_run_invariants(const BoostRun& run, Algorithm algo, std::size_t m, std::size_t k);

void emit_potential_table(std::ostream& out, std::size_t k, double gamma, int t_max, const LossSpec& loss,
                          bool with_minimal);
void emit_degree_map(std::ostream& out, double gamma, const LossSpec& loss, int T);

std::string default_out_dir();
std::string format_double(double v);

// Model files written by `train` and read by `eval`.
struct Model {
  std::size_t k = 2;
  std::vector<std::string> label_names;
  std::vector<std::string> feature_names;
  ScoringFunction scoring{2};
};

void save_model(const std::string& path, const BoostRun& run, const Dataset& train);
Model load_model(const std::string& path);

}  // namespace mcboost

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>

#include <CLI11.hpp>

#include "mcboost/boosters.hpp"
#include "mcboost/conditions.hpp"
#include "mcboost/harness.hpp"
#include "mcboost/kernels.hpp"

using namespace mcboost;

namespace {

const std::map<std::string, Algorithm> kAlgos{
    {"mm-approx", Algorithm::kMmApprox}, {"mm-exact", Algorithm::kMmExact}, {"os", Algorithm::kOs}};
const std::map<std::string, LossKind> kLosses{{"zeroone", LossKind::kZeroOne}, {"exp", LossKind::kExp}};
const std::map<std::string, LearnerKind> kLearners{{"best-response", LearnerKind::kBestResponse},
                                                   {"stump", LearnerKind::kStump},
                                                   {"greedy", LearnerKind::kGreedy},
                                                   {"greedy-info", LearnerKind::kGreedyInfo}};

LossSpec loss_of(LossKind kind, double eta) { return kind == LossKind::kExp ? LossSpec::exp(eta) : LossSpec::zero_one(); }

// Writes to <out>/<name> when an output directory is set, else to stdout.
void emit(const std::string& out_dir, const std::string& name, const std::function<void(std::ostream&)>& body) {
  if (out_dir.empty()) {
    body(std::cout);
    return;
  }
  std::filesystem::create_directories(out_dir);
  const auto path = std::filesystem::path(out_dir) / name;
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  body(f);
  std::cout << path.string() << '\n';
}

int cmd_train(ExperimentConfig cfg, const std::vector<std::size_t>& sizes, bool to_stdout) {
  if (cfg.out_dir.empty() && !to_stdout) cfg.out_dir = default_out_dir();
  std::vector<ExperimentConfig> cfgs;
  if (sizes.size() <= 1) {
    if (!sizes.empty()) cfg.tree_size = sizes[0];
    cfgs.push_back(cfg);
  } else {
    for (std::size_t n : sizes) {
      ExperimentConfig c = cfg;
      c.tree_size = n;
      if (!cfg.out_dir.empty()) c.out_dir = (std::filesystem::path(cfg.out_dir) / ("size_" + std::to_string(n))).string();
      cfgs.push_back(c);
    }
  }
  for (const auto& c : cfgs) validate(c);
  auto results = run_experiments(cfgs);
  std::cout << "tree_size\trounds\ttrain_err\ttest_err\n";
  for (std::size_t j = 0; j < results.size(); ++j) {
    const auto& r = results[j];
    std::cout << cfgs[j].tree_size << '\t' << r.run.rounds.size() << '\t' << format_double(r.train_error) << '\t'
              << (r.test_error ? format_double(*r.test_error) : std::string("NA")) << '\n';
  }
  return 0;
}

int cmd_eval(const std::string& model_path, const std::string& data_path, const std::string& label_column) {
  Model model = load_model(model_path);
  Dataset data = load_csv(data_path, label_column, &model.label_names, nullptr);
  if (data.num_features() != model.feature_names.size())
    throw std::runtime_error("feature count differs from the model (" + std::to_string(model.feature_names.size()) + ")");
  for (std::size_t j = 0; j < data.num_features(); ++j)
    if (data.column(j).name != model.feature_names[j])
      throw std::runtime_error("feature '" + data.column(j).name + "' does not match model feature '" +
                               model.feature_names[j] + "'");
  Matrix scores = model.scoring.scores(data);
  std::cout << "metric\tvalue\n";
  std::cout << "m\t" << data.m() << '\n';
  std::cout << "error\t" << format_double(training_error(scores, data.labels())) << '\n';
  std::cout << "exp_risk\t" << format_double(exp_risk(scores, data.labels())) << '\n';
  return 0;
}

Dataset random_dataset(std::mt19937_64& rng, std::size_t& m_out, std::size_t& k_out) {
  std::uniform_int_distribution<std::size_t> md(2, 20), kd(2, 4);
  const std::size_t m = md(rng), k = kd(rng);
  std::vector<Label> y(m);
  for (auto& v : y) v = std::uniform_int_distribution<Label>(0, k - 1)(rng);
  m_out = m;
  k_out = k;
  return Dataset::labels_only(std::move(y), k);
}

// MM (approx) vs binary AdaBoost on the mislabel transform; returns the number of mismatching datasets.
int cmd_equivalence(std::size_t datasets, std::uint64_t seed, std::size_t rounds) {
  std::mt19937_64 rng(seed);
  std::size_t bad = 0;
  for (std::size_t d = 0; d < datasets; ++d) {
    std::size_t m, k;
    Dataset data = random_dataset(rng, m, k);
    std::uniform_int_distribution<std::size_t> nh(2, 8);
    HypothesisSpace space(nh(rng), std::vector<Label>(m));
    for (auto& h : space)
      for (auto& v : h) v = std::uniform_int_distribution<Label>(0, k - 1)(rng);
    BestResponseLearner mm_learner(space);
    BoostRun mm = adaboost_mm(data, rounds, mm_learner, StepRule::kApprox);
    MislabelTransform tr = transform_mislabel(data, space);
    BinaryRun bin = adaboost_binary(tr.data, tr.space, rounds, MaxEdgeLearner{});
    bool ok = mm.rounds.size() == bin.rounds.size();
    double worst = 0.0;
    for (std::size_t t = 0; ok && t < mm.rounds.size(); ++t) {
      ok = mm.rounds[t].classifier == bin.rounds[t].classifier;
      worst = std::max(worst, std::fabs(mm.rounds[t].alpha - bin.rounds[t].alpha));
    }
    ok = ok && worst <= 1e-9;
    std::cout << "dataset " << d << " m=" << m << " k=" << k << " |H|=" << space.size() << " rounds=" << mm.rounds.size()
              << " max|dalpha|=" << format_double(worst) << (ok ? " ok" : " MISMATCH") << '\n';
    bad += ok ? 0 : 1;
  }
  std::cout << (bad == 0 ? "all runs identical" : std::to_string(bad) + " mismatching runs") << '\n';
  return bad == 0 ? 0 : 1;
}

int cmd_fixtures(const std::string& which, std::size_t m, double gamma_prime, double gamma, std::size_t k,
                 std::size_t iters) {
  if (which == "figure1") {
    Fixture fx = figure1_fixture();
    const double g = (1.0 - 1.0 / 3.0) * 0.1;
    Condition samme = make_condition(ConditionName::kSamme, g, fx.data);
    GameValueReport rep = solve_game(fx.space, fx.data, samme, iters);
    BoostabilityResult b = is_boostable(fx.space, fx.data, iters);
    Baseline u = uniform_baseline(fx.data.labels(), 3, 0.1);
    std::cout << "samme gamma=" << format_double(g) << " value=" << format_double(rep.value)
              << " lower=" << format_double(rep.lower_bound) << " verdict=" << to_string(rep.verdict) << '\n';
    std::cout << "boostable=" << to_string(b.answer) << " margin_upper=" << format_double(b.margin_upper) << '\n';
    for (std::size_t j = 0; j < fx.space.size(); ++j)
      std::cout << "edge h" << (j + 1) << " vs U_0.1 = " << format_double(edge(fx.cost.entries, fx.space[j], u.entries))
                << '\n';
    return 0;
  }
  if (which == "window") {
    Fixture fx = window_fixture(m, gamma_prime, k);
    BestResponseLearner learner(fx.space);
    BoostRun run = adaboost_mm(fx.data, 200, learner, StepRule::kApprox);
    std::cout << "m=" << m << " k=" << k << " |H|=" << fx.space.size() << " rounds=" << run.rounds.size()
              << " final_err=" << format_double(run.rounds.empty() ? 1.0 : run.rounds.back().train_error) << '\n';
    return 0;
  }
  if (which == "mh-overdemand") {
    Fixture fx = mh_overdemand_fixture(k, gamma, m);
    Condition m1 = make_condition(ConditionName::kM1, gamma, fx.data);
    Condition mh = make_condition(ConditionName::kMH, gamma, fx.data);
    auto r1 = solve_game(fx.space, fx.data, m1, iters);
    auto rh = solve_game(fx.space, fx.data, mh, iters);
    std::cout << "k=" << k << " m=" << m << " |H|=" << fx.space.size() << '\n';
    std::cout << "M1 value=" << format_double(r1.value) << " verdict=" << to_string(r1.verdict) << '\n';
    std::cout << "MH value=" << format_double(rh.value) << " verdict=" << to_string(rh.verdict) << '\n';
    std::cout << "MH violation=" << format_double(mh_overdemand_violation(fx, gamma)) << '\n';
    return 0;
  }
  throw std::invalid_argument("unknown fixture '" + which + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiclass boosting toolkit"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::vector<std::size_t> sizes;
  std::string fixture;
  WindowSpec window;
  bool to_stdout = false;
  auto* train = app.add_subcommand("train", "Boost on a CSV dataset or a window fixture");
  train->add_option("--data", cfg.data_path, "CSV with a header row");
  train->add_option("--label-column", cfg.label_column, "Label column name (default: last)");
  train->add_option("--test-data", cfg.test_path, "Separate test CSV");
  train->add_option("--split-file", cfg.split_path, "0-based row indices of the test set, one per line");
  train->add_option("--split", cfg.split, "Train fraction of the random split")->capture_default_str();
  train->add_option("--algo", cfg.algo)->transform(CLI::CheckedTransformer(kAlgos, CLI::ignore_case));
  train->add_option("--rounds", cfg.rounds)->capture_default_str();
  train->add_option("--gamma", cfg.gamma)->capture_default_str();
  train->add_option("--eta", cfg.eta)->capture_default_str();
  train->add_option("--loss", cfg.loss)->transform(CLI::CheckedTransformer(kLosses, CLI::ignore_case));
  train->add_option("--learner", cfg.learner)->transform(CLI::CheckedTransformer(kLearners, CLI::ignore_case));
  train->add_option("--tree-size", sizes, "Node cap; several values run in parallel");
  train->add_option("--seed", cfg.seed)->capture_default_str();
  train->add_option("--out", cfg.out_dir, "Output directory (default: $MCBOOST_OUT_DIR or mcboost-out)");
  train->add_flag("--no-files", to_stdout, "Print the summary only");
  train->add_option("--fixture", fixture, "Use a built-in dataset instead of --data")->check(CLI::IsMember({"window"}));
  train->add_option("--fixture-m", window.m)->capture_default_str();
  train->add_option("--fixture-gamma", window.gamma_prime)->capture_default_str();
  train->add_option("--fixture-k", window.k)->capture_default_str();

  std::string model_path, eval_data, eval_label;
  auto* eval = app.add_subcommand("eval", "Score a saved model on a CSV");
  eval->add_option("--model", model_path)->required();
  eval->add_option("--data", eval_data)->required();
  eval->add_option("--label-column", eval_label);

  std::size_t pk = 6;
  double pgamma = 0.0, peta = 0.1;
  int prounds = 10;
  LossKind ploss = LossKind::kZeroOne;
  bool pminimal = false;
  std::string pout;
  auto* pot = app.add_subcommand("potentials", "Potential table phi_T(0) for T = 0..rounds");
  pot->add_option("--k", pk)->capture_default_str();
  pot->add_option("--gamma", pgamma)->capture_default_str();
  pot->add_option("--eta", peta)->capture_default_str();
  pot->add_option("--rounds", prounds)->capture_default_str();
  pot->add_option("--loss", ploss)->transform(CLI::CheckedTransformer(kLosses, CLI::ignore_case));
  pot->add_flag("--minimal", pminimal, "Add the minimal-condition column");
  pot->add_option("--out", pout, "Directory for potentials.tsv (default: stdout)");

  double dgamma = 0.0, deta = 0.025;
  int drounds = 10;
  LossKind dloss = LossKind::kExp;
  std::string dout;
  auto* deg = app.add_subcommand("degree-map", "Degree of the minimal potential over (s2-s1, s3-s1, t), k = 3");
  deg->add_option("--gamma", dgamma)->capture_default_str();
  deg->add_option("--eta", deta)->capture_default_str();
  deg->add_option("--rounds", drounds)->capture_default_str();
  deg->add_option("--loss", dloss)->transform(CLI::CheckedTransformer(kLosses, CLI::ignore_case));
  deg->add_option("--out", dout, "Directory for degree_map.tsv (default: stdout)");

  std::size_t edatasets = 50, erounds = 50;
  std::uint64_t eseed = 1;
  auto* eq = app.add_subcommand("equivalence-check", "AdaBoost.MM vs binary AdaBoost on mislabel triples");
  eq->add_option("--datasets", edatasets)->capture_default_str();
  eq->add_option("--rounds", erounds)->capture_default_str();
  eq->add_option("--seed", eseed)->capture_default_str();

  std::string fname;
  std::size_t fm = 21, fk = 3, fiters = 20000;
  double fgp = 0.1, fgamma = 0.1;
  auto* fix = app.add_subcommand("fixtures", "Run a built-in fixture and print its verdicts");
  fix->add_option("name", fname)->required()->check(CLI::IsMember({"figure1", "window", "mh-overdemand"}));
  fix->add_option("--m", fm)->capture_default_str();
  fix->add_option("--k", fk)->capture_default_str();
  fix->add_option("--gamma-prime", fgp)->capture_default_str();
  fix->add_option("--gamma", fgamma)->capture_default_str();
  fix->add_option("--iters", fiters)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train) {
      if (!fixture.empty()) {
        cfg.window = window;
        if (train->count("--learner") == 0) cfg.learner = LearnerKind::kBestResponse;
      }
      return cmd_train(cfg, sizes, to_stdout);
    }
    if (*eval) return cmd_eval(model_path, eval_data, eval_label);
    if (*pot) {
      emit(pout, "potentials.tsv",
           [&](std::ostream& o) { emit_potential_table(o, pk, pgamma, prounds, loss_of(ploss, peta), pminimal); });
      return 0;
    }
    if (*deg) {
      emit(dout, "degree_map.tsv", [&](std::ostream& o) { emit_degree_map(o, dgamma, loss_of(dloss, deta), drounds); });
      return 0;
    }
    if (*eq) return cmd_equivalence(edatasets, eseed, erounds);
    if (*fix) return cmd_fixtures(fname, fm, fgp, fgamma, fk, fiters);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

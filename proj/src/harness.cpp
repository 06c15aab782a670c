#include "mcboost/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "mcboost/conditions.hpp"
#include "mcboost/kernels.hpp"

#ifndef MCBOOST_VERSION
#define MCBOOST_VERSION "unknown"
#endif

namespace mcboost {

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kMmApprox: return "mm-approx";
    case Algorithm::kMmExact: return "mm-exact";
    case Algorithm::kOs: return "os";
  }
  return "?";
}

const char* to_string(LearnerKind l) {
  switch (l) {
    case LearnerKind::kBestResponse: return "best-response";
    case LearnerKind::kStump: return "stump";
    case LearnerKind::kGreedy: return "greedy";
    case LearnerKind::kGreedyInfo: return "greedy-info";
  }
  return "?";
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string default_out_dir() {
  if (const char* env = std::getenv("MCBOOST_OUT_DIR"); env && *env) return env;
  return "mcboost-out";
}

void validate(const ExperimentConfig& cfg) {
  if (!(cfg.split > 0.0 && cfg.split < 1.0)) throw std::invalid_argument("split must lie in (0, 1)");
  if (!(cfg.gamma >= 0.0 && cfg.gamma < 1.0)) throw std::invalid_argument("gamma must lie in [0, 1)");
  if (!(cfg.eta >= 0.0)) throw std::invalid_argument("eta must be >= 0");
  if (cfg.tree_size < 1) throw std::invalid_argument("tree size must be >= 1");
  if (cfg.window) {
    if (cfg.learner != LearnerKind::kBestResponse)
      throw std::invalid_argument("window fixtures need the best-response learner");
  } else {
    if (cfg.data_path.empty()) throw std::invalid_argument("no dataset given");
    if (cfg.learner == LearnerKind::kBestResponse)
      throw std::invalid_argument("the best-response learner needs a finite space (use a window fixture)");
  }
}

// ---------------------------------------------------------------- CSV

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split_csv_line(const std::string& line, std::size_t lineno) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false, was_quoted = false;
  for (std::size_t p = 0; p < line.size(); ++p) {
    char ch = line[p];
    if (quoted) {
      if (ch == '"') {
        if (p + 1 < line.size() && line[p + 1] == '"') {
          cur += '"';
          ++p;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
      was_quoted = true;
    } else if (ch == ',') {
      out.push_back(was_quoted ? cur : trim(cur));
      cur.clear();
      was_quoted = false;
    } else {
      cur += ch;
    }
  }
  if (quoted) throw std::runtime_error("line " + std::to_string(lineno) + ": unterminated quote");
  out.push_back(was_quoted ? cur : trim(cur));
  return out;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  if (*b == '+') ++b;
  auto [ptr, ec] = std::from_chars(b, e, out);
  return ec == std::errc() && ptr == e && std::isfinite(out);
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& label_column,
                 const std::vector<std::string>* label_order, std::ostream* log) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    header = split_csv_line(line, lineno);
    break;
  }
  if (header.empty()) throw std::runtime_error(path + ": missing header row");
  std::size_t label_idx = header.size() - 1;
  if (!label_column.empty()) {
    auto it = std::find(header.begin(), header.end(), label_column);
    if (it == header.end()) throw std::runtime_error(path + ": label column '" + label_column + "' not found");
    label_idx = static_cast<std::size_t>(it - header.begin());
  }
  if (header.size() < 2) throw std::runtime_error(path + ": need at least one feature column");

  std::vector<std::vector<std::string>> cells(header.size());
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto row = split_csv_line(line, lineno);
    if (row.size() != header.size())
      throw std::runtime_error(path + ": line " + std::to_string(lineno) + ": expected " +
                               std::to_string(header.size()) + " fields, got " + std::to_string(row.size()));
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c].empty())
        throw std::runtime_error(path + ": line " + std::to_string(lineno) + ": empty value in column '" +
                                 header[c] + "'");
      cells[c].push_back(std::move(row[c]));
    }
  }
  if (cells[label_idx].empty()) throw std::runtime_error(path + ": no data rows");

  std::vector<std::string> names;
  std::unordered_map<std::string, Label> index;
  if (label_order) {
    names = *label_order;
    for (std::size_t l = 0; l < names.size(); ++l) index.emplace(names[l], l);
  }
  std::vector<Label> labels;
  for (std::size_t r = 0; r < cells[label_idx].size(); ++r) {
    const std::string& v = cells[label_idx][r];
    auto it = index.find(v);
    if (it == index.end()) {
      if (label_order) throw std::runtime_error(path + ": data row " + std::to_string(r + 1) + ": unknown label '" + v + "'");
      it = index.emplace(v, names.size()).first;
      names.push_back(v);
    }
    labels.push_back(it->second);
  }
  if (names.size() < 2) throw std::runtime_error(path + ": need at least two classes, found " + std::to_string(names.size()));

  std::vector<FeatureColumn> cols;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c == label_idx) continue;
    std::vector<double> nums;
    nums.reserve(cells[c].size());
    bool numeric = true;
    for (const auto& v : cells[c]) {
      double d;
      if (!parse_double(v, d)) {
        numeric = false;
        break;
      }
      nums.push_back(d);
    }
    if (numeric)
      cols.push_back(FeatureColumn::make_numeric(header[c], std::move(nums)));
    else
      cols.push_back(FeatureColumn::make_categorical(header[c], std::move(cells[c])));
    if (log) *log << "# column " << header[c] << ": " << (numeric ? "numeric" : "categorical") << '\n';
  }
  if (log) {
    *log << "# label column " << header[label_idx] << ":";
    for (std::size_t l = 0; l < names.size(); ++l) *log << ' ' << (l + 1) << '=' << names[l];
    *log << '\n';
  }
  const std::size_t k = names.size();
  return Dataset(std::move(cols), std::move(labels), k, std::move(names));
}

TrainTest split_dataset(const Dataset& data, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw std::invalid_argument("split must lie in (0, 1)");
  std::vector<std::size_t> order(data.m());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  // Fisher-Yates with an explicit draw so the permutation does not depend on the library's shuffle.
  for (std::size_t i = order.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
  auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(data.m())));
  n_train = std::clamp<std::size_t>(n_train, 1, data.m());
  std::vector<std::size_t> tr(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  std::vector<std::size_t> te(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
  std::sort(tr.begin(), tr.end());
  std::sort(te.begin(), te.end());
  TrainTest out{data.subset(tr), std::nullopt, tr, te};
  if (!te.empty()) out.test = data.subset(te);
  return out;
}

TrainTest split_by_file(const Dataset& data, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open split file " + path);
  std::vector<bool> is_test(data.m(), false);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t idx = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), idx);
    if (ec != std::errc() || ptr != t.data() + t.size() || idx >= data.m())
      throw std::runtime_error(path + ": line " + std::to_string(lineno) + ": bad row index '" + t + "'");
    is_test[idx] = true;
  }
  std::vector<std::size_t> tr, te;
  for (std::size_t i = 0; i < data.m(); ++i) (is_test[i] ? te : tr).push_back(i);
  if (tr.empty()) throw std::runtime_error(path + ": split leaves no training rows");
  TrainTest out{data.subset(tr), std::nullopt, tr, te};
  if (!te.empty()) out.test = data.subset(te);
  return out;
}

// ---------------------------------------------------------------- invariants

void check_run_invariants(const BoostRun& run, Algorithm algo, std::size_t m, std::size_t k) {
  auto fail = [](const std::string& what, const RoundRecord& r) {
    throw std::logic_error("invariant violated at round " + std::to_string(r.round) + ": " + what);
  };
  if (algo == Algorithm::kOs) {
    bool clean = std::none_of(run.rounds.begin(), run.rounds.end(), [](const RoundRecord& r) { return r.flagged; });
    if (!clean) return;
    for (const auto& r : run.rounds)
      if (r.loss > r.loss_before + 1e-12 * std::max(1.0, std::fabs(r.loss_before)))
        fail("average potential increased", r);
    if (!run.rounds.empty() && run.rounds.back().train_error > run.initial_loss + 1e-12)
      fail("training error above the initial potential", run.rounds.back());
    return;
  }
  double bound = 1.0;
  for (const auto& r : run.rounds) {
    const double ratio = r.loss / r.loss_before;
    if (!r.flagged && !r.clamped) {
      const double cap = std::sqrt(std::max(0.0, 1.0 - r.edge * r.edge));
      if (ratio > cap + 1e-9) fail("Z_t / Z_{t-1} above sqrt(1 - delta^2)", r);
      if (algo == Algorithm::kMmExact &&
          std::fabs(ratio - drop_factor_exact(r.a_plus, r.a_minus, r.loss_before, r.edge)) > 1e-9)
        fail("exact-step drop factor mismatch", r);
      bound *= cap;
    } else if (r.clamped) {
      bound *= ratio;
    }
    if (r.train_error > static_cast<double>(k - 1) * bound + 1e-9) fail("training error above (k-1) prod sqrt(1-delta^2)", r);
    if (r.train_error > r.loss / static_cast<double>(m) * (1.0 + 1e-12) + 1e-300) fail("training error above Z_t / m", r);
  }
}

// ---------------------------------------------------------------- experiments

namespace {

std::unique_ptr<WeakLearner> make_learner(const ExperimentConfig& cfg, const HypothesisSpace* space) {
  switch (cfg.learner) {
    case LearnerKind::kBestResponse: return std::make_unique<BestResponseLearner>(*space);
    case LearnerKind::kStump: return std::make_unique<TreeLearner>(3, SplitCriterion::kCost);
    case LearnerKind::kGreedy: return std::make_unique<TreeLearner>(cfg.tree_size, SplitCriterion::kCost);
    case LearnerKind::kGreedyInfo: return std::make_unique<TreeLearner>(cfg.tree_size, SplitCriterion::kInfoGain);
  }
  throw std::invalid_argument("unknown learner");
}

void write_metadata(std::ostream& out, const ExperimentConfig& cfg, const Dataset& train) {
  out << "# mcboost " << MCBOOST_VERSION << '\n';
  out << "# algo=" << to_string(cfg.algo) << " rounds=" << cfg.rounds << " gamma=" << format_double(cfg.gamma)
      << " eta=" << format_double(cfg.eta) << " loss=" << (cfg.loss == LossKind::kExp ? "exp" : "zeroone")
      << " learner=" << to_string(cfg.learner) << " tree_size=" << cfg.tree_size << " seed=" << cfg.seed
      << " split=" << format_double(cfg.split) << '\n';
  if (cfg.window)
    out << "# data=window m=" << cfg.window->m << " gamma_prime=" << format_double(cfg.window->gamma_prime)
        << " k=" << cfg.window->k << '\n';
  else
    out << "# data=" << cfg.data_path << (cfg.test_path.empty() ? "" : " test=" + cfg.test_path)
        << (cfg.split_path.empty() ? "" : " split_file=" + cfg.split_path) << '\n';
  out << "# labels:";
  for (std::size_t l = 0; l < train.k(); ++l) out << ' ' << (l + 1) << '=' << train.label_names()[l];
  out << '\n';
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  std::ostringstream log;
  std::optional<Dataset> train, test;
  HypothesisSpace space;
  if (cfg.window) {
    Fixture fx = window_fixture(cfg.window->m, cfg.window->gamma_prime, cfg.window->k);
    train = std::move(fx.data);
    space = std::move(fx.space);
  } else {
    Dataset all = load_csv(cfg.data_path, cfg.label_column, nullptr, &log);
    if (!cfg.test_path.empty()) {
      train = std::move(all);
      test = load_csv(cfg.test_path, cfg.label_column, &train->label_names(), nullptr);
    } else if (!cfg.split_path.empty()) {
      TrainTest tt = split_by_file(all, cfg.split_path);
      train = std::move(tt.train);
      test = std::move(tt.test);
    } else {
      TrainTest tt = split_dataset(all, cfg.split, cfg.seed);
      train = std::move(tt.train);
      test = std::move(tt.test);
    }
  }

  auto learner = make_learner(cfg, &space);
  ExperimentResult res;
  switch (cfg.algo) {
    case Algorithm::kMmApprox: res.run = adaboost_mm(*train, cfg.rounds, *learner, StepRule::kApprox); break;
    case Algorithm::kMmExact: res.run = adaboost_mm(*train, cfg.rounds, *learner, StepRule::kExact); break;
    case Algorithm::kOs: {
      LossSpec loss = cfg.loss == LossKind::kExp ? LossSpec::exp(cfg.eta) : LossSpec::zero_one();
      Baseline b = uniform_baseline(train->labels(), train->k(), cfg.gamma);
      res.run = os_boost_fixed(*train, b, loss, cfg.rounds, *learner);
      break;
    }
  }
  check_run_invariants(res.run, cfg.algo, train->m(), train->k());

  res.train_error = training_error(res.run.train_scores, train->labels());
  if (test) {
    Matrix scores(test->m(), test->k(), 0.0);
    const auto& terms = res.run.scoring.terms();
    for (const auto& term : terms) {
      for (std::size_t i = 0; i < test->m(); ++i) scores(i, term.h->predict(*test, i)) += term.alpha;
      res.test_curve.push_back(training_error(scores, test->labels()));
    }
    res.test_error = training_error(scores, test->labels());
  }

  if (!cfg.out_dir.empty()) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    const fs::path dir(cfg.out_dir);
    {
      std::ofstream out(dir / "curve.tsv");
      write_metadata(out, cfg, *train);
      out << "t\tdelta\talpha\tZ\ttrain_err\ttest_err\n";
      for (std::size_t r = 0; r < res.run.rounds.size(); ++r) {
        const auto& rec = res.run.rounds[r];
        out << rec.round << '\t' << format_double(rec.edge) << '\t' << format_double(rec.alpha) << '\t'
            << format_double(rec.loss) << '\t' << format_double(rec.train_error) << '\t'
            << (r < res.test_curve.size() ? format_double(res.test_curve[r]) : std::string("NA")) << '\n';
      }
    }
    {
      std::ofstream out(dir / "metrics.tsv");
      write_metadata(out, cfg, *train);
      out << "metric\tvalue\n";
      out << "rounds_run\t" << res.run.rounds.size() << '\n';
      out << "m_train\t" << train->m() << '\n';
      out << "m_test\t" << (test ? test->m() : 0) << '\n';
      out << "k\t" << train->k() << '\n';
      out << "train_error\t" << format_double(res.train_error) << '\n';
      out << "test_error\t" << (res.test_error ? format_double(*res.test_error) : std::string("NA")) << '\n';
      out << "exp_risk\t" << format_double(exp_risk(res.run.train_scores, train->labels())) << '\n';
      out << "initial_loss\t" << format_double(res.run.initial_loss) << '\n';
      out << "final_loss\t"
          << format_double(res.run.rounds.empty() ? res.run.initial_loss : res.run.rounds.back().loss) << '\n';
      out << "separated\t" << (res.run.separated ? 1 : 0) << '\n';
      std::size_t flagged = 0;
      for (const auto& r : res.run.rounds) flagged += r.flagged ? 1 : 0;
      out << "flagged_rounds\t" << flagged << '\n';
    }
    {
      std::ofstream out(dir / "labels.tsv");
      out << "index\tlabel\n";
      for (std::size_t l = 0; l < train->k(); ++l) out << (l + 1) << '\t' << train->label_names()[l] << '\n';
    }
    {
      std::ofstream out(dir / "run.log");
      write_metadata(out, cfg, *train);
      out << log.str();
    }
    if (!cfg.window) save_model((dir / "model.json").string(), res.run, *train);
  }
  return res;
}

std::vector<ExperimentResult> run_experiments(const std::vector<ExperimentConfig>& cfgs) {
  std::vector<std::optional<ExperimentResult>> out(cfgs.size());
  std::vector<std::string> errors(cfgs.size());
  const auto n = static_cast<std::ptrdiff_t>(cfgs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    try {
      out[static_cast<std::size_t>(j)] = run_experiment(cfgs[static_cast<std::size_t>(j)]);
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(j)] = e.what();
    }
  }
  std::vector<ExperimentResult> res;
  for (std::size_t j = 0; j < cfgs.size(); ++j) {
    if (!errors[j].empty()) throw std::runtime_error(errors[j]);
    res.push_back(std::move(*out[j]));
  }
  return res;
}

// ---------------------------------------------------------------- potentials

void emit_potential_table(std::ostream& out, std::size_t k, double gamma, int t_max, const LossSpec& loss,
                          bool with_minimal) {
  if (t_max < 0) throw std::invalid_argument("T must be >= 0");
  EorDistribution b = EorDistribution::biased_uniform(k, gamma);
  std::vector<double> fixed;
  std::vector<int> zero(k, 0);
  if (loss.kind == LossKind::kZeroOne) {
    fixed = kernels::zeroone_column_parallel(b, t_max);
  } else {
    for (int t = 0; t <= t_max; ++t) fixed.push_back(potential_exp_closed(b, loss.eta, t, zero));
  }
  out << "# k=" << k << " gamma=" << format_double(gamma)
      << " loss=" << (loss.kind == LossKind::kExp ? "exp eta=" + format_double(loss.eta) : std::string("zeroone"))
      << '\n';
  out << "T\tphi_fixed" << (with_minimal ? "\tphi_minimal" : "") << '\n';
  std::optional<PotentialTable> table;
  if (with_minimal) table.emplace(k, gamma, loss);
  for (int t = 0; t <= t_max; ++t) {
    out << t << '\t' << format_double(fixed[static_cast<std::size_t>(t)]);
    if (table) out << '\t' << format_double(table->at(t, zero).value);
    out << '\n';
  }
}

void emit_degree_map(std::ostream& out, double gamma, const LossSpec& loss, int T) {
  auto cells = degree_map(gamma, loss, T, 3);
  out << "# k=3 gamma=" << format_double(gamma)
      << " loss=" << (loss.kind == LossKind::kExp ? "exp eta=" + format_double(loss.eta) : std::string("zeroone"))
      << " T=" << T << " u=s2-s1 v=s3-s1\n";
  out << "u\tv\tt\tdegree\n";
  for (const auto& c : cells) out << c.u << '\t' << c.v << '\t' << c.t << '\t' << c.degree << '\n';
}

}  // namespace mcboost

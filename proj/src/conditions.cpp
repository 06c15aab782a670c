#include "mcboost/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mcboost {

const char* to_string(ConditionName n) {
  switch (n) {
    case ConditionName::kSamme: return "SAMME";
    case ConditionName::kM1: return "M1";
    case ConditionName::kMH: return "MH";
    case ConditionName::kMR: return "MR";
    case ConditionName::kEorFixed: return "EOR-fixed";
    case ConditionName::kMinimal: return "MINIMAL";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kSatisfied: return "satisfied";
    case Verdict::kViolated: return "violated";
    case Verdict::kUndetermined: return "undetermined";
  }
  return "?";
}

const char* to_string(Boostability b) {
  switch (b) {
    case Boostability::kYes: return "yes";
    case Boostability::kNo: return "no";
    case Boostability::kUndetermined: return "undetermined";
  }
  return "?";
}

static void check_gamma(double gamma) {
  if (!(gamma >= 0.0) || gamma >= 1.0) throw std::invalid_argument("gamma must lie in [0, 1)");
}

Baseline uniform_baseline(std::span<const Label> labels, std::size_t k, double gamma) {
  Matrix b(labels.size(), k, (1.0 - gamma) / static_cast<double>(k));
  for (std::size_t i = 0; i < labels.size(); ++i) b.at(i, labels[i]) += gamma;
  return {std::move(b), BaselineKind::kUniform, gamma};
}

Baseline m1_baseline(std::span<const Label> labels, std::size_t k, double gamma) {
  Matrix b(labels.size(), k, 0.0);
  for (std::size_t i = 0; i < labels.size(); ++i) b.at(i, labels[i]) = gamma;
  return {std::move(b), BaselineKind::kM1, gamma};
}

Baseline mh_baseline(std::span<const Label> labels, std::size_t k, double gamma) {
  Matrix b(labels.size(), k, 0.5 - gamma / 2.0);
  for (std::size_t i = 0; i < labels.size(); ++i) b.at(i, labels[i]) = 0.5 + gamma / 2.0;
  return {std::move(b), BaselineKind::kMH, gamma};
}

Baseline mr_baseline(std::span<const Label> labels, std::size_t k, double gamma) {
  Matrix b(labels.size(), k, -gamma / 2.0);
  for (std::size_t i = 0; i < labels.size(); ++i) b.at(i, labels[i]) = gamma / 2.0;
  return {std::move(b), BaselineKind::kMR, gamma};
}

bool in_eor_simplex(std::span<const double> b, Label y, double gamma, double tol) {
  double sum = 0.0, best_other = -std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < b.size(); ++l) {
    if (b[l] < -tol) return false;
    sum += b[l];
    if (l != y) best_other = std::max(best_other, b[l]);
  }
  return std::fabs(sum - 1.0) <= tol && std::fabs(b[y] - gamma - best_other) <= tol;
}

Condition make_condition(ConditionName name, double gamma, const Dataset& data, std::optional<Matrix> eor_rows,
                         double tol) {
  check_gamma(gamma);
  auto labels = data.labels();
  const std::size_t k = data.k();
  Condition c;
  c.name = name;
  c.gamma = gamma;
  switch (name) {
    case ConditionName::kSamme:
      c.family = CostFamily::kSam;
      c.baseline = uniform_baseline(labels, k, gamma);
      break;
    case ConditionName::kM1:
      c.family = CostFamily::kM1;
      c.baseline = m1_baseline(labels, k, gamma);
      break;
    case ConditionName::kMH:
      c.family = CostFamily::kMH;
      c.baseline = mh_baseline(labels, k, gamma);
      break;
    case ConditionName::kMR:
      c.family = CostFamily::kMR;
      c.baseline = mr_baseline(labels, k, gamma);
      break;
    case ConditionName::kEorFixed: {
      if (!eor_rows) throw std::invalid_argument("EOR-fixed condition needs a baseline");
      if (eor_rows->rows() != data.m() || eor_rows->cols() != k)
        throw std::invalid_argument("EOR-fixed baseline has wrong shape");
      for (std::size_t i = 0; i < data.m(); ++i)
        if (!in_eor_simplex(eor_rows->row(i), labels[i], gamma, tol))
          throw std::invalid_argument("EOR-fixed baseline row " + std::to_string(i) +
                                      " is not an edge-over-random distribution");
      c.family = CostFamily::kEor;
      c.baseline = Baseline{std::move(*eor_rows), BaselineKind::kEor, gamma};
      break;
    }
    case ConditionName::kMinimal:
      c.family = CostFamily::kEor;
      break;
  }
  return c;
}

double edge(const Matrix& cost, std::span<const Label> predictions, const Matrix& baseline) {
  if (cost.rows() != predictions.size() || cost.rows() != baseline.rows() || cost.cols() != baseline.cols())
    throw std::invalid_argument("edge: dimension mismatch");
  double cb = inner(cost, baseline);
  double ch = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) ch += cost.at(i, predictions[i]);
  return cb - ch;
}

namespace {

// A normalized generator of the per-row cost cone. Payoff against a row h is c.h - offset.
struct Candidate {
  std::vector<double> c;
  double offset;
};

std::vector<Candidate> row_candidates(const Condition& cond, Label y, std::size_t k, std::span<const double> b) {
  std::vector<std::vector<double>> gens;
  auto unit = [&](std::size_t l, double v) {
    std::vector<double> g(k, 0.0);
    g[l] = v;
    return g;
  };
  const double kd = static_cast<double>(k);
  if (cond.name == ConditionName::kMinimal) {
    // max over b in the edge-over-random set of (e_l - e_y)/2 . b is -gamma/2.
    std::vector<Candidate> out;
    for (std::size_t l = 0; l < k; ++l) {
      if (l == y) continue;
      std::vector<double> g(k, 0.0);
      g[l] = 0.5;
      g[y] = -0.5;
      out.push_back({std::move(g), -cond.gamma / 2.0});
    }
    return out;
  }
  switch (cond.family) {
    case CostFamily::kSam: {
      std::vector<double> g(k, 1.0 / (kd - 1.0));
      g[y] = 0.0;
      gens.push_back(std::move(g));
      break;
    }
    case CostFamily::kM1: {
      std::vector<double> g(k, 1.0 / kd);
      g[y] = -1.0 / kd;
      gens.push_back(std::move(g));
      break;
    }
    case CostFamily::kMH:
      gens.push_back(unit(y, -1.0));
      for (std::size_t l = 0; l < k; ++l)
        if (l != y) gens.push_back(unit(l, 1.0));
      break;
    case CostFamily::kMR:
      for (std::size_t l = 0; l < k; ++l) {
        if (l == y) continue;
        std::vector<double> g(k, 0.0);
        g[l] = 0.5;
        g[y] = -0.5;
        gens.push_back(std::move(g));
      }
      break;
    case CostFamily::kEor:
      gens.push_back(std::vector<double>(k, 1.0 / kd));
      gens.push_back(std::vector<double>(k, -1.0 / kd));
      for (std::size_t l = 0; l < k; ++l)
        if (l != y) gens.push_back(unit(l, 1.0));
      break;
    case CostFamily::kUnconstrained:
      for (std::size_t l = 0; l < k; ++l) {
        gens.push_back(unit(l, 1.0));
        gens.push_back(unit(l, -1.0));
      }
      break;
  }
  std::vector<Candidate> out;
  for (auto& g : gens) {
    double off = 0.0;
    for (std::size_t l = 0; l < k; ++l) off += g[l] * b[l];
    out.push_back({std::move(g), off});
  }
  return out;
}

// Precomputed payoff table: pay[i][r][j] = c_r(h_j(i)) - offset_r.
struct GameTable {
  std::size_t m = 0, n = 0, k = 0;
  std::vector<std::vector<Candidate>> cands;
  std::vector<std::vector<std::vector<double>>> pay;
  double range = 1.0;
};

GameTable build_table(const HypothesisSpace& space, const Dataset& data, const Condition& cond) {
  GameTable t;
  t.m = data.m();
  t.n = space.size();
  t.k = data.k();
  t.cands.resize(t.m);
  t.pay.resize(t.m);
  double r = 0.0;
  std::vector<double> zero_row(t.k, 0.0);
  for (std::size_t i = 0; i < t.m; ++i) {
    std::span<const double> b = cond.baseline ? cond.baseline->entries.row(i) : std::span<const double>(zero_row);
    t.cands[i] = row_candidates(cond, data.label(i), t.k, b);
    for (const auto& cand : t.cands[i]) {
      std::vector<double> col(t.n);
      for (std::size_t j = 0; j < t.n; ++j) {
        col[j] = cand.c[space[j].at(i)] - cand.offset;
        r = std::max(r, std::fabs(col[j]));
      }
      t.pay[i].push_back(std::move(col));
    }
  }
  t.range = std::max(2.0 * r, 1e-12);
  return t;
}

// Exact max over C of the normalized payoff against mixture lambda, with the slack subtracted
// from every nonzero row choice.
double upper_value(const GameTable& t, std::span<const double> lambda, double slack = 0.0) {
  double total = 0.0;
  for (std::size_t i = 0; i < t.m; ++i) {
    double best = 0.0;
    for (const auto& col : t.pay[i]) {
      double v = -slack;
      for (std::size_t j = 0; j < t.n; ++j) v += lambda[j] * col[j];
      best = std::max(best, v);
    }
    total += best;
  }
  return total / static_cast<double>(t.m);
}

std::vector<double> softmax(std::span<const double> logits) {
  double mx = *std::max_element(logits.begin(), logits.end());
  std::vector<double> w(logits.size());
  double s = 0.0;
  for (std::size_t j = 0; j < logits.size(); ++j) s += (w[j] = std::exp(logits[j] - mx));
  for (double& v : w) v /= s;
  return w;
}

struct HedgeResult {
  double best_upper = std::numeric_limits<double>::infinity();
  std::vector<double> best_lambda;
  double best_lower = 0.0;
  // Row choices (candidate index or -1 for the zero row) weighted; attains best_lower.
  std::vector<std::vector<double>> best_mix;
  std::size_t iterations = 0;
};

// Mixed row strategy value for hypothesis j: (1/m) sum_i sum_r mix[i][r] pay[i][r][j].
double mixed_lower(const GameTable& t, const std::vector<std::vector<double>>& mix) {
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < t.n; ++j) {
    double v = 0.0;
    for (std::size_t i = 0; i < t.m; ++i)
      for (std::size_t r = 0; r < mix[i].size(); ++r) v += mix[i][r] * t.pay[i][r][j];
    lo = std::min(lo, v / static_cast<double>(t.m));
  }
  return lo;
}

void consider_upper(const GameTable& t, HedgeResult& res, std::span<const double> lambda) {
  double u = upper_value(t, lambda);
  if (u < res.best_upper) {
    res.best_upper = u;
    res.best_lambda.assign(lambda.begin(), lambda.end());
  }
}

HedgeResult hedge(const GameTable& t, std::size_t iters, double slack, HedgeResult res) {
  const double eta = std::sqrt(8.0 * std::log(std::max<double>(2.0, static_cast<double>(t.n))) /
                               static_cast<double>(std::max<std::size_t>(iters, 1))) /
                     t.range;
  std::vector<double> cum(t.n, 0.0), lambda_sum(t.n, 0.0);
  std::vector<std::vector<double>> mix_sum(t.m), mix(t.m);
  for (std::size_t i = 0; i < t.m; ++i) {
    mix_sum[i].assign(t.pay[i].size(), 0.0);
    mix[i].assign(t.pay[i].size(), 0.0);
  }
  std::vector<double> logits(t.n);
  for (std::size_t it = 1; it <= iters; ++it) {
    for (std::size_t j = 0; j < t.n; ++j) logits[j] = -eta * cum[j];
    auto lambda = softmax(logits);
    for (std::size_t j = 0; j < t.n; ++j) lambda_sum[j] += lambda[j];
    consider_upper(t, res, lambda);
    if (res.best_upper <= 1e-12) {
      res.iterations += it;
      return res;
    }
    // Row-wise best response to lambda under the (possibly tightened) payoff.
    std::vector<double> loss(t.n, 0.0);
    for (std::size_t i = 0; i < t.m; ++i) {
      std::fill(mix[i].begin(), mix[i].end(), 0.0);
      double best = 0.0;
      int arg = -1;
      for (std::size_t r = 0; r < t.pay[i].size(); ++r) {
        double v = -slack;
        for (std::size_t j = 0; j < t.n; ++j) v += lambda[j] * t.pay[i][r][j];
        if (v > best + 1e-15) {
          best = v;
          arg = static_cast<int>(r);
        }
      }
      if (arg >= 0) {
        mix[i][arg] = 1.0;
        mix_sum[i][arg] += 1.0;
        for (std::size_t j = 0; j < t.n; ++j) loss[j] += t.pay[i][arg][j] - slack;
      }
    }
    if (slack == 0.0) {
      double lo = mixed_lower(t, mix);
      if (lo > res.best_lower) {
        res.best_lower = lo;
        res.best_mix = mix;
      }
    }
    for (std::size_t j = 0; j < t.n; ++j) cum[j] += loss[j] / static_cast<double>(t.m);
  }
  res.iterations += iters;
  for (double& v : lambda_sum) v /= static_cast<double>(iters);
  consider_upper(t, res, lambda_sum);
  if (slack == 0.0 && iters > 0) {
    for (auto& row : mix_sum)
      for (double& v : row) v /= static_cast<double>(iters);
    double lo = mixed_lower(t, mix_sum);
    if (lo > res.best_lower) {
      res.best_lower = lo;
      res.best_mix = mix_sum;
    }
  }
  return res;
}

}  // namespace

GameValueReport solve_game(const HypothesisSpace& space, const Dataset& data, const Condition& cond,
                           std::size_t iters) {
  if (space.empty()) throw std::invalid_argument("solve_game: empty hypothesis space");
  for (const auto& h : space)
    if (h.size() != data.m()) throw std::invalid_argument("solve_game: prediction vector has wrong length");
  if (cond.name != ConditionName::kMinimal && !cond.baseline)
    throw std::invalid_argument("solve_game: condition has no baseline");
  GameTable t = build_table(space, data, cond);

  HedgeResult res;
  std::vector<double> lambda(t.n, 0.0);
  for (std::size_t j = 0; j < t.n; ++j) {
    lambda.assign(t.n, 0.0);
    lambda[j] = 1.0;
    consider_upper(t, res, lambda);
  }
  lambda.assign(t.n, 1.0 / static_cast<double>(t.n));
  consider_upper(t, res, lambda);

  // Plain self-play first; then tightened games, whose solutions land strictly inside the
  // satisfying region when the condition holds with some slack.
  std::size_t plain = std::max<std::size_t>(1, iters / 2);
  res = hedge(t, plain, 0.0, std::move(res));
  if (res.best_upper > kVerdictTolerance && res.best_lower <= kVerdictTolerance) {
    std::size_t rest = iters > plain ? iters - plain : 0;
    for (double slack : {1e-2, 1e-3, 1e-4}) {
      if (rest == 0 || res.best_upper <= kVerdictTolerance) break;
      res = hedge(t, rest / 3 + 1, slack, std::move(res));
    }
  }

  GameValueReport rep;
  rep.value = res.best_upper;
  rep.lower_bound = res.best_lower;
  rep.gap = std::max(0.0, rep.value - rep.lower_bound);
  rep.mixture = res.best_lambda;
  rep.iterations = res.iterations;
  Matrix c(t.m, t.k, 0.0);
  if (!res.best_mix.empty())
    for (std::size_t i = 0; i < t.m; ++i)
      for (std::size_t r = 0; r < res.best_mix[i].size(); ++r)
        for (std::size_t l = 0; l < t.k; ++l) c.at(i, l) += res.best_mix[i][r] * t.cands[i][r].c[l];
  rep.cost = CostMatrix{std::move(c), cond.family};
  if (rep.value <= kVerdictTolerance)
    rep.verdict = Verdict::kSatisfied;
  else if (rep.lower_bound > kVerdictTolerance)
    rep.verdict = Verdict::kViolated;
  else
    rep.verdict = Verdict::kUndetermined;
  return rep;
}

double mixture_margin(const HypothesisSpace& space, std::span<const double> lambda, const Dataset& data) {
  const std::size_t k = data.k();
  double margin = std::numeric_limits<double>::infinity();
  std::vector<double> row(k);
  for (std::size_t i = 0; i < data.m(); ++i) {
    std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t j = 0; j < space.size(); ++j) row[space[j][i]] += lambda[j];
    Label y = data.label(i);
    double other = -std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < k; ++l)
      if (l != y) other = std::max(other, row[l]);
    margin = std::min(margin, row[y] - other);
  }
  return margin;
}

namespace {

// Searches rows in {0} U {e_l - e_y} for C != 0 with C.1_h >= 0 for every h.
std::optional<Matrix> vertex_certificate(const HypothesisSpace& space, const Dataset& data) {
  const std::size_t m = data.m(), k = data.k(), n = space.size();
  double combos = std::pow(static_cast<double>(k), static_cast<double>(m));
  if (combos > 4e6) return std::nullopt;
  std::vector<std::size_t> choice(m, 0);  // 0 = zero row, else wrong label index among l != y
  std::vector<double> score(n);
  while (true) {
    std::size_t pos = 0;
    while (pos < m && ++choice[pos] == k) choice[pos++] = 0;
    if (pos == m) break;
    std::fill(score.begin(), score.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      if (choice[i] == 0) continue;
      Label y = data.label(i);
      Label l = choice[i] - 1;
      if (l >= y) ++l;
      for (std::size_t j = 0; j < n; ++j)
        score[j] += (space[j][i] == l ? 1.0 : 0.0) - (space[j][i] == y ? 1.0 : 0.0);
    }
    if (*std::min_element(score.begin(), score.end()) >= 0.0) {
      Matrix c(m, k, 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        if (choice[i] == 0) continue;
        Label y = data.label(i);
        Label l = choice[i] - 1;
        if (l >= y) ++l;
        c.at(i, l) = 1.0;
        c.at(i, y) = -1.0;
      }
      return c;
    }
  }
  return std::nullopt;
}

}  // namespace

BoostabilityResult is_boostable(const HypothesisSpace& space, const Dataset& data, std::size_t iters) {
  if (space.empty()) throw std::invalid_argument("is_boostable: empty hypothesis space");
  const std::size_t m = data.m(), k = data.k(), n = space.size();
  for (const auto& h : space)
    if (h.size() != m) throw std::invalid_argument("is_boostable: prediction vector has wrong length");

  BoostabilityResult res;
  double best_margin = -std::numeric_limits<double>::infinity();
  std::vector<double> best_lambda;
  auto consider = [&](std::span<const double> lambda) {
    double g = mixture_margin(space, lambda, data);
    if (g > best_margin) {
      best_margin = g;
      best_lambda.assign(lambda.begin(), lambda.end());
    }
  };
  std::vector<double> lambda(n, 1.0 / static_cast<double>(n));
  consider(lambda);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> e(n, 0.0);
    e[j] = 1.0;
    consider(e);
  }

  // Hedge for the mixture player on gains; the pair player best-responds.
  const double eta = std::sqrt(8.0 * std::log(std::max<double>(2.0, static_cast<double>(n))) /
                               static_cast<double>(std::max<std::size_t>(iters, 1))) /
                     2.0;
  std::vector<double> cum(n, 0.0), lambda_sum(n, 0.0);
  Matrix pair_sum(m, k, 0.0);
  std::vector<double> logits(n), row(k);
  for (std::size_t it = 0; it < iters; ++it) {
    for (std::size_t j = 0; j < n; ++j) logits[j] = eta * cum[j];
    lambda = softmax(logits);
    for (std::size_t j = 0; j < n; ++j) lambda_sum[j] += lambda[j];
    double worst = std::numeric_limits<double>::infinity();
    std::size_t wi = 0;
    Label wl = 0;
    for (std::size_t i = 0; i < m; ++i) {
      std::fill(row.begin(), row.end(), 0.0);
      for (std::size_t j = 0; j < n; ++j) row[space[j][i]] += lambda[j];
      Label y = data.label(i);
      for (std::size_t l = 0; l < k; ++l) {
        if (l == y) continue;
        double g = row[y] - row[l];
        if (g < worst) {
          worst = g;
          wi = i;
          wl = l;
        }
      }
    }
    if (worst > best_margin) {
      best_margin = worst;
      best_lambda = lambda;
    }
    pair_sum.at(wi, wl) += 1.0;
    Label y = data.label(wi);
    for (std::size_t j = 0; j < n; ++j)
      cum[j] += (space[j][wi] == y ? 1.0 : 0.0) - (space[j][wi] == wl ? 1.0 : 0.0);
  }
  if (iters > 0) {
    for (double& v : lambda_sum) v /= static_cast<double>(iters);
    consider(lambda_sum);
  }

  // Upper bound on the optimal margin from the averaged pair strategy.
  double upper = std::numeric_limits<double>::infinity();
  Matrix cert(m, k, 0.0);
  if (iters > 0) {
    upper = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      double g = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        Label y = data.label(i);
        for (std::size_t l = 0; l < k; ++l) {
          double q = pair_sum(i, l) / static_cast<double>(iters);
          if (q == 0.0) continue;
          g += q * ((space[j][i] == y ? 1.0 : 0.0) - (space[j][i] == l ? 1.0 : 0.0));
        }
      }
      upper = std::max(upper, g);
    }
    for (std::size_t i = 0; i < m; ++i) {
      Label y = data.label(i);
      for (std::size_t l = 0; l < k; ++l) {
        double q = pair_sum(i, l) / static_cast<double>(iters);
        if (q == 0.0) continue;
        cert.at(i, l) += q;
        cert.at(i, y) -= q;
      }
    }
  }

  res.margin = best_margin;
  res.margin_upper = upper;
  res.mixture = best_lambda;
  if (best_margin > kVerdictTolerance) {
    res.answer = Boostability::kYes;
  } else if (upper < -kVerdictTolerance) {
    res.answer = Boostability::kNo;
    res.certificate = CostMatrix{std::move(cert), CostFamily::kMR};
  } else if (auto v = vertex_certificate(space, data)) {
    res.answer = Boostability::kNo;
    res.margin_upper = std::min(res.margin_upper, 0.0);
    res.certificate = CostMatrix{std::move(*v), CostFamily::kMR};
  } else {
    res.answer = Boostability::kUndetermined;
  }
  return res;
}

}  // namespace mcboost

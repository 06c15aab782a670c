#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "mcboost/harness.hpp"
#include "mcboost/weaklearners.hpp"

namespace mcboost {

namespace {

using nlohmann::json;

json node_to_json(const TreeNode& n) {
  if (n.leaf) return json{{"label", n.label}};
  json j{{"feature", n.feature}, {"left", n.left}, {"right", n.right}};
  if (n.categorical)
    j["category"] = n.category;
  else
    j["threshold"] = n.threshold;
  return j;
}

TreeNode node_from_json(const json& j) {
  TreeNode n;
  if (j.contains("label")) {
    n.label = j.at("label").get<Label>();
    return n;
  }
  n.leaf = false;
  n.feature = j.at("feature").get<std::size_t>();
  n.left = j.at("left").get<int>();
  n.right = j.at("right").get<int>();
  if (j.contains("category")) {
    n.categorical = true;
    n.category = j.at("category").get<std::string>();
  } else {
    n.threshold = j.at("threshold").get<double>();
  }
  return n;
}

}  // namespace

void save_model(const std::string& path, const BoostRun& run, const Dataset& train) {
  json terms = json::array();
  for (const auto& term : run.scoring.terms()) {
    json t{{"alpha", term.alpha}};
    if (auto tree = std::dynamic_pointer_cast<const Tree>(term.h)) {
      json nodes = json::array();
      for (const auto& n : tree->nodes()) nodes.push_back(node_to_json(n));
      t["tree"] = std::move(nodes);
    } else if (auto table = std::dynamic_pointer_cast<const TableClassifier>(term.h)) {
      t["table"] = table->predictions();
    } else {
      throw std::invalid_argument("save_model: cannot serialize " + term.h->describe());
    }
    terms.push_back(std::move(t));
  }
  json features = json::array();
  for (const auto& c : train.columns()) features.push_back(c.name);
  json doc{{"format", "mcboost-model"}, {"version", 1},       {"k", train.k()},
           {"labels", train.label_names()}, {"features", features}, {"terms", terms}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << doc.dump(1) << '\n';
}

Model load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  if (doc.value("format", std::string()) != "mcboost-model") throw std::runtime_error(path + ": not a model file");
  Model m;
  m.k = doc.at("k").get<std::size_t>();
  m.label_names = doc.at("labels").get<std::vector<std::string>>();
  m.feature_names = doc.at("features").get<std::vector<std::string>>();
  if (m.label_names.size() != m.k) throw std::runtime_error(path + ": label count does not match k");
  m.scoring = ScoringFunction(m.k);
  for (const auto& t : doc.at("terms")) {
    const double alpha = t.at("alpha").get<double>();
    if (t.contains("tree")) {
      std::vector<TreeNode> nodes;
      for (const auto& n : t.at("tree")) {
        nodes.push_back(node_from_json(n));
        if (nodes.back().leaf && nodes.back().label >= m.k) throw std::runtime_error(path + ": leaf label out of range");
      }
      m.scoring.add(std::make_shared<Tree>(std::move(nodes)), alpha);
    } else if (t.contains("table")) {
      m.scoring.add(std::make_shared<TableClassifier>(t.at("table").get<std::vector<Label>>()), alpha);
    } else {
      throw std::runtime_error(path + ": term without a classifier");
    }
  }
  return m;
}

}  // namespace mcboost

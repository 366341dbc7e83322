// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#include "rnc/stoch/io.hpp"

#include <fstream>
#include <limits>
#include <set>

#include <json.hpp>

namespace rnc::stoch {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!known.count(it.key()))
      throw ParseError("unknown field '" + it.key() + "' in " + where);
  }
}

std::vector<Triplet> parse_triplets(const json& arr, const std::string& where) {
  std::vector<Triplet> out;
  for (const auto& t : arr) {
    if (!t.is_array() || t.size() != 3)
      throw ParseError(where + ": triplet must be [row, col, value]");
    out.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<double>()});
  }
  return out;
}

// null in JSON encodes an infinite bound
double parse_bound(const json& v, double inf_sign) {
  if (v.is_null()) return inf_sign * kInf;
  return v.get<double>();
}

ordered_json bound_to_json(double v) {
  if (v == kInf || v == -kInf) return nullptr;
  return v;
}

}  // namespace

Instance instance_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  try {
    reject_unknown(doc, {"version", "name", "tree", "problems", "x0", "recourse_penalty"}, "root");
    const int version = doc.at("version").get<int>();
    if (version != 1)
      throw SchemaVersionError("unsupported schema version " + std::to_string(version));

    Instance inst;
    inst.name = doc.value("name", std::string{});
    reject_unknown(doc.at("tree"), {"nodes"}, "tree");
    int min_stage = std::numeric_limits<int>::max();
    for (const auto& jn : doc.at("tree").at("nodes")) {
      reject_unknown(jn, {"id", "stage", "ancestor", "prob"}, "tree.nodes[]");
      TreeNode n;
      n.id = jn.at("id").get<int>();
      n.stage = jn.at("stage").get<int>();
      n.ancestor = jn.at("ancestor").get<int>();
      n.prob = jn.at("prob").get<double>();
      if (n.ancestor < 0) inst.tree.root_id = n.id;
      min_stage = std::min(min_stage, n.stage);
      inst.tree.nodes.push_back(std::move(n));
    }
    (void)min_stage;
    for (auto it = doc.at("problems").begin(); it != doc.at("problems").end(); ++it) {
      const int id = std::stoi(it.key());
      const json& jp = it.value();
      reject_unknown(jp,
                     {"d", "B", "state_integral", "locals", "T", "W", "Wbar", "b", "f"},
                     "problems." + it.key());
      NodeProblem p;
      p.state_dim = jp.at("d").get<int>();
      p.state_bound = jp.at("B").get<std::vector<double>>();
      p.state_integral = jp.at("state_integral").get<std::vector<bool>>();
      const json& jl = jp.at("locals");
      reject_unknown(jl, {"lb", "ub", "integral"}, "locals");
      for (const auto& v : jl.at("lb")) p.locals.lb.push_back(parse_bound(v, -1));
      for (const auto& v : jl.at("ub")) p.locals.ub.push_back(parse_bound(v, +1));
      p.locals.integral = jl.at("integral").get<std::vector<bool>>();
      p.T = parse_triplets(jp.at("T"), "T");
      p.W = parse_triplets(jp.at("W"), "W");
      p.Wbar = parse_triplets(jp.at("Wbar"), "Wbar");
      p.rhs = jp.at("b").get<std::vector<double>>();
      p.num_rows = static_cast<int>(p.rhs.size());
      const json& jf = jp.at("f");
      reject_unknown(jf, {"state", "local"}, "f");
      p.state_cost = jf.at("state").get<std::vector<double>>();
      p.locals.cost = jf.at("local").get<std::vector<double>>();
      inst.problems.emplace(id, std::move(p));
    }
    inst.x0 = doc.at("x0").get<std::vector<double>>();
    if (doc.contains("recourse_penalty") && !doc.at("recourse_penalty").is_null())
      inst.recourse_penalty = doc.at("recourse_penalty").get<double>();

    finalize_instance(inst);
    return inst;
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

Instance load_instance(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + path);
  const std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return instance_from_json(text);
}

std::string instance_to_json(const Instance& instance) {
  ordered_json doc;
  doc["version"] = 1;
  doc["name"] = instance.name;
  auto& nodes = doc["tree"]["nodes"] = ordered_json::array();
  for (const TreeNode& n : instance.tree.nodes) {
    ordered_json jn;
    jn["id"] = n.id;
    jn["stage"] = n.stage;
    jn["ancestor"] = n.ancestor;
    jn["prob"] = n.prob;
    nodes.push_back(std::move(jn));
  }
  auto& probs = doc["problems"] = ordered_json::object();
  for (const auto& [id, p] : instance.problems) {
    ordered_json jp;
    jp["d"] = p.state_dim;
    jp["B"] = p.state_bound;
    jp["state_integral"] = p.state_integral;
    ordered_json jl;
    auto& lb = jl["lb"] = ordered_json::array();
    for (double v : p.locals.lb) lb.push_back(bound_to_json(v));
    auto& ub = jl["ub"] = ordered_json::array();
    for (double v : p.locals.ub) ub.push_back(bound_to_json(v));
    jl["integral"] = p.locals.integral;
    jp["locals"] = std::move(jl);
    auto triplets = [](const std::vector<Triplet>& ts) {
      ordered_json arr = ordered_json::array();
      for (const Triplet& t : ts) arr.push_back(ordered_json::array({t.row, t.col, t.value}));
      return arr;
    };
    jp["T"] = triplets(p.T);
    jp["W"] = triplets(p.W);
    jp["Wbar"] = triplets(p.Wbar);
    jp["b"] = p.rhs;
    jp["f"]["state"] = p.state_cost;
    jp["f"]["local"] = p.locals.cost;
    probs[std::to_string(id)] = std::move(jp);
  }
  doc["x0"] = instance.x0;
  if (instance.recourse_penalty.has_value()) doc["recourse_penalty"] = *instance.recourse_penalty;
  return doc.dump(2) + "\n";
}

void save_instance(const Instance& instance, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << instance_to_json(instance);
}

}  // namespace rnc::stoch

// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#include "rnc/cuts/pool.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

namespace rnc::cuts {

const std::vector<Cut> CutPool::empty_;

namespace {

bool vec_equal(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (std::fabs(a[i] - b[i]) > 1e-12) return false;
  return true;
}

bool same_cut(const Cut& a, const Cut& b) {
  if (a.index() != b.index()) return false;
  if (std::holds_alternative<ReluCut>(a)) {
    const auto& x = std::get<ReluCut>(a);
    const auto& y = std::get<ReluCut>(b);
    return std::fabs(x.pi0 - y.pi0) <= 1e-12 && std::fabs(x.value - y.value) <= 1e-12 &&
           vec_equal(x.anchor, y.anchor) && vec_equal(x.pi_plus, y.pi_plus) &&
           vec_equal(x.pi_minus, y.pi_minus);
  }
  const auto& x = std::get<LinearCut>(a);
  const auto& y = std::get<LinearCut>(b);
  return std::fabs(x.intercept - y.intercept) <= 1e-12 && vec_equal(x.slope, y.slope);
}

}  // namespace

CutPool::CutPool(const CutPool& other) {
  std::scoped_lock lock(other.mutex_);
  cuts_ = other.cuts_;
  generation_ = other.generation_;
}

CutPool& CutPool::operator=(const CutPool& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mutex_, other.mutex_);
  cuts_ = other.cuts_;
  generation_ = other.generation_;
  return *this;
}

bool CutPool::append(int child, Cut cut) {
  std::scoped_lock lock(mutex_);
  auto& list = cuts_[child];
  for (const Cut& existing : list)
    if (same_cut(existing, cut)) return false;
  list.push_back(std::move(cut));
  ++generation_;
  return true;
}

const std::vector<Cut>& CutPool::for_child(int child) const {
  std::scoped_lock lock(mutex_);
  auto it = cuts_.find(child);
  return it == cuts_.end() ? empty_ : it->second;
}

std::vector<int> CutPool::children() const {
  std::scoped_lock lock(mutex_);
  std::vector<int> out;
  out.reserve(cuts_.size());
  for (const auto& [child, list] : cuts_) out.push_back(child);
  return out;
}

long CutPool::size() const {
  std::scoped_lock lock(mutex_);
  long n = 0;
  for (const auto& [child, list] : cuts_) n += static_cast<long>(list.size());
  return n;
}

std::string CutPool::to_json() const {
  std::scoped_lock lock(mutex_);
  nlohmann::ordered_json doc;
  doc["version"] = 1;
  auto& arr = doc["cuts"] = nlohmann::ordered_json::array();
  for (const auto& [child, list] : cuts_) {
    for (const Cut& cut : list) {
      nlohmann::ordered_json j;
      j["child"] = child;
      if (std::holds_alternative<ReluCut>(cut)) {
        const auto& c = std::get<ReluCut>(cut);
        j["kind"] = "relu";
        j["anchor"] = c.anchor;
        j["pi_plus"] = c.pi_plus;
        j["pi_minus"] = c.pi_minus;
        j["pi0"] = c.pi0;
        j["value"] = c.value;
        j["generator"] = c.meta.generator;
        j["iteration"] = c.meta.iteration;
      } else {
        const auto& c = std::get<LinearCut>(cut);
        j["kind"] = "linear";
        j["intercept"] = c.intercept;
        j["slope"] = c.slope;
        j["generator"] = c.meta.generator;
        j["iteration"] = c.meta.iteration;
      }
      arr.push_back(std::move(j));
    }
  }
  return doc.dump(2) + "\n";
}

CutPool CutPool::from_json(const std::string& text) {
  const nlohmann::json doc = nlohmann::json::parse(text);
  CutPool pool;
  for (const auto& j : doc.at("cuts")) {
    const int child = j.at("child").get<int>();
    CutMeta meta;
    meta.node = child;
    meta.generator = j.value("generator", std::string{});
    meta.iteration = j.value("iteration", -1);
    if (j.at("kind") == "relu") {
      ReluCut c;
      c.anchor = j.at("anchor").get<std::vector<double>>();
      c.pi_plus = j.at("pi_plus").get<std::vector<double>>();
      c.pi_minus = j.at("pi_minus").get<std::vector<double>>();
      c.pi0 = j.at("pi0").get<double>();
      c.value = j.at("value").get<double>();
      c.meta = std::move(meta);
      pool.append(child, std::move(c));
    } else {
      LinearCut c;
      c.intercept = j.at("intercept").get<double>();
      c.slope = j.at("slope").get<std::vector<double>>();
      c.meta = std::move(meta);
      pool.append(child, std::move(c));
    }
  }
  return pool;
}

void CutPool::save(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << to_json();
}

CutPool CutPool::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  const std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return from_json(text);
}

}  // namespace rnc::cuts

// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
//
// Batch front door: run decomposition experiments, verify cut certificates,
// and aggregate table-style reports.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <regex>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "rnc/engine/engine.hpp"
#include "rnc/instances/families.hpp"
#include "rnc/oracle/certify.hpp"
#include "rnc/stoch/io.hpp"

namespace fs = std::filesystem;
using namespace rnc;

namespace {

int env_threads() {
  const char* v = std::getenv("RNC_THREADS");
  if (!v) return 1;
  const int n = std::atoi(v);
  return n > 0 ? n : 1;
}

engine::EngineConfig config_from_file(const std::string& path) {
  engine::EngineConfig cfg;
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config " + path);
  nlohmann::json doc = nlohmann::json::parse(f);
  if (doc.contains("method")) {
    const auto m = engine::parse_method(doc["method"].get<std::string>());
    if (!m) throw std::runtime_error("config: unknown method; expected one of benders,relu,norm,reg");
    cfg.method = *m;
  }
  cfg.alternating = doc.value("alternating", cfg.alternating);
  cfg.gap_tol = doc.value("gap_tol", cfg.gap_tol);
  cfg.max_iterations = doc.value("max_iterations", cfg.max_iterations);
  cfg.time_limit_s = doc.value("time_limit_s", cfg.time_limit_s);
  cfg.stall_window = doc.value("stall_window", cfg.stall_window);
  cfg.stall_eps = doc.value("stall_eps", cfg.stall_eps);
  cfg.dual_box_bound = doc.value("dual_box_bound", cfg.dual_box_bound);
  cfg.reg_epsilon = doc.value("reg_epsilon", cfg.reg_epsilon);
  cfg.reg_bound_factor = doc.value("reg_bound_factor", cfg.reg_bound_factor);
  cfg.norm_tighten = doc.value("norm_tighten", cfg.norm_tighten);
  cfg.seed = doc.value("seed", cfg.seed);
  cfg.threads = doc.value("threads", cfg.threads);
  if (doc.contains("bundle")) {
    cfg.bundle.tol = doc["bundle"].value("tol", cfg.bundle.tol);
    cfg.bundle.max_iters = doc["bundle"].value("max_iters", cfg.bundle.max_iters);
    cfg.bundle.lambda = doc["bundle"].value("lambda", cfg.bundle.lambda);
  }
  return cfg;
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

std::string class_of(const std::string& stem) {
  static const std::regex seed_suffix("_s[0-9]+$");
  return std::regex_replace(stem, seed_suffix, "");
}

struct RunSummary {
  std::string instance, cls, method;
  uint64_t seed = 0;
  int iters = 0;
  double time_s = 0, ub = 0, lb = 0, gap_pct = 0, d_iter = 0, prop = 0;
  engine::StopReason reason = engine::StopReason::Converged;
};

int cmd_run(const std::vector<std::string>& instance_paths, const std::string& config_path,
            std::vector<std::string> methods, bool alternating_flag, bool alternating_set,
            double gap, bool gap_set, int max_iter, bool max_iter_set, double time_limit,
            bool time_limit_set, uint64_t seed, bool seed_set, const std::string& out_dir,
            bool verbose) {
  engine::EngineConfig base;
  if (!config_path.empty()) base = config_from_file(config_path);
  if (alternating_set) base.alternating = alternating_flag;
  if (gap_set) base.gap_tol = gap;
  if (max_iter_set) base.max_iterations = max_iter;
  if (time_limit_set) base.time_limit_s = time_limit;
  if (seed_set) base.seed = seed;
  base.verbose = verbose;
  if (verbose) base.trace = &std::cerr;

  if (methods.empty()) methods.push_back(engine::to_string(base.method));
  std::vector<engine::Method> parsed;
  for (const std::string& name : methods) {
    const auto m = engine::parse_method(name);
    if (!m) {
      std::cerr << "unknown method '" << name << "'; expected one of benders,relu,norm,reg\n";
      return 1;
    }
    parsed.push_back(*m);
  }

  fs::create_directories(out_dir);
  struct Job {
    std::string path;
    engine::Method method;
  };
  std::vector<Job> jobs;
  for (const std::string& p : instance_paths)
    for (const engine::Method m : parsed) jobs.push_back({p, m});

  std::vector<RunSummary> summaries(jobs.size());
  std::vector<std::string> errors(jobs.size());
  std::atomic<size_t> next{0};
  const int workers = std::min<int>(env_threads(), static_cast<int>(jobs.size()));
  auto work = [&] {
    for (size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) {
      try {
        const stoch::Instance inst = stoch::load_instance(jobs[i].path);
        engine::EngineConfig cfg = base;
        cfg.method = jobs[i].method;
        const engine::RunResult res = engine::run(inst, cfg);
        const std::string stem = stem_of(jobs[i].path);
        const std::string csv =
            out_dir + "/" + stem + "__" + engine::to_string(cfg.method) + ".csv";
        engine::write_csv(res.log, csv);
        RunSummary& s = summaries[i];
        s.instance = stem;
        s.cls = class_of(stem);
        s.method = engine::to_string(cfg.method);
        s.seed = cfg.seed;
        s.iters = res.log.empty() ? 0 : res.log.back().iter;
        s.time_s = res.log.empty() ? 0 : res.log.back().time_s;
        s.ub = res.ub;
        s.lb = res.lb;
        s.gap_pct = res.gap_pct;
        s.d_iter = res.generations > 0 ? res.bundle_iterations / res.generations : 0.0;
        s.prop = res.cuts_added > 0 ? static_cast<double>(res.relu_cuts_added) / res.cuts_added
                                    : 0.0;
        s.reason = res.reason;
        res.pool.save(out_dir + "/" + stem + "__" + engine::to_string(cfg.method) +
                      "_pool.json");
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  if (workers > 1) {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  } else {
    work();
  }

  bool any_error = false, any_limit = false;
  std::ofstream sf(out_dir + "/summary.csv");
  sf << "instance,class,method,seed,iters,time_s,ub,lb,gap_pct,d_iter_avg,prop_relu,reason\n";
  sf.precision(10);
  for (size_t i = 0; i < jobs.size(); ++i) {
    if (!errors[i].empty()) {
      std::cerr << "error on " << jobs[i].path << ": " << errors[i] << "\n";
      any_error = true;
      continue;
    }
    const RunSummary& s = summaries[i];
    sf << s.instance << "," << s.cls << "," << s.method << "," << s.seed << "," << s.iters << ","
       << s.time_s << "," << s.ub << "," << s.lb << "," << s.gap_pct << "," << s.d_iter << ","
       << s.prop << "," << engine::to_string(s.reason) << "\n";
    std::cout << s.instance << " " << s.method << ": " << engine::to_string(s.reason)
              << " iters=" << s.iters << " time=" << s.time_s << "s ub=" << s.ub
              << " lb=" << s.lb << " gap%=" << s.gap_pct << " d_iter=" << s.d_iter
              << " prop=" << s.prop << "\n";
    if (s.reason != engine::StopReason::Converged) any_limit = true;
  }
  if (any_error) return 1;
  return any_limit ? 2 : 0;
}

int cmd_verify(const std::string& instance_path, const std::string& pool_path,
               double resolution) {
  const stoch::Instance inst = stoch::load_instance(instance_path);
  const cuts::CutPool pool = cuts::CutPool::load(pool_path);

  bool contract_failed = false;
  int index = 0;
  for (const int child : pool.children()) {
    const std::vector<cuts::Cut>& list = pool.for_child(child);
    std::vector<std::vector<double>> anchors;
    for (const cuts::Cut& cut : list)
      if (std::holds_alternative<cuts::ReluCut>(cut))
        anchors.push_back(std::get<cuts::ReluCut>(cut).anchor);
    oracle::ValueTable table;
    try {
      table = oracle::enum_value_function(inst, child, {}, resolution, anchors);
    } catch (const oracle::GridTooLarge& e) {
      std::cerr << "GridTooLarge at child " << child << ": " << e.what()
                << "\n  hint: lower --resolution or verify a smaller instance\n";
      return 1;
    }

    for (const cuts::Cut& cut : list) {
      const bool is_relu = std::holds_alternative<cuts::ReluCut>(cut);
      const std::string gen = is_relu ? std::get<cuts::ReluCut>(cut).meta.generator
                                      : std::get<cuts::LinearCut>(cut).meta.generator;
      std::vector<double> anchor;
      if (is_relu) {
        anchor = std::get<cuts::ReluCut>(cut).anchor;
      } else {
        anchor = table.points.front();  // tightness is not contractual for affine cuts
      }
      const oracle::LagrangianProbe probe =
          [&inst, child, anchor](const std::vector<double>& pip,
                                 const std::vector<double>& pim) {
            dual::DualPoint p;
            p.pi_plus = pip;
            p.pi_minus = pim;
            const dual::LagrangianEval ev = dual::eval_lagrangian(inst, child, {}, anchor, p);
            oracle::LagrangianProbeResult out;
            out.value = ev.value;
            out.minimizer.resize(anchor.size());
            for (size_t k = 0; k < anchor.size(); ++k)
              out.minimizer[k] = anchor[k] + ev.w_plus[k] - ev.w_minus[k];
            return out;
          };
      const oracle::CertificateBundle cert = oracle::check_cut(cut, table, anchor, 0.0, {},
                                                               is_relu ? probe : nullptr);
      bool ok = cert.validity.kind == oracle::Certificate::Kind::Valid;
      std::string note;
      if (gen == "norm" || gen == "norm_tight" || gen == "reg") {
        if (cert.pareto.kind != oracle::Certificate::Kind::Pareto) {
          ok = false;
          note += " pareto-contract-failed";
        }
      }
      if (gen == "norm_tight" && cert.tightness.kind != oracle::Certificate::Kind::Tight) {
        ok = false;
        note += " tight-contract-failed";
      }
      if (gen == "reg" && cert.tightness.margin > 1e-2 + 1e-6) {
        ok = false;
        note += " tight-up-to-eps-failed";
      }
      std::cout << "cut " << index++ << " child=" << child << " gen=" << gen
                << " validity=" << oracle::to_string(cert.validity.kind)
                << " tightness=" << oracle::to_string(cert.tightness.kind) << "(gap="
                << cert.tightness.margin << ")"
                << " pareto=" << oracle::to_string(cert.pareto.kind) << note;
      if (cert.validity.kind == oracle::Certificate::Kind::Invalid) {
        std::cout << " witness=(";
        for (size_t k = 0; k < cert.validity.witness.size(); ++k)
          std::cout << (k ? "," : "") << cert.validity.witness[k];
        std::cout << ")";
      }
      std::cout << "\n";
      if (!ok) contract_failed = true;
    }
  }
  return contract_failed ? 1 : 0;
}

int cmd_report(const std::string& dir, const std::string& out_csv,
               const std::string& plot_csv) {
  struct Key {
    std::string cls, method;
    bool operator<(const Key& o) const {
      return cls != o.cls ? cls < o.cls : method < o.method;
    }
  };
  struct Agg {
    int runs = 0;
    double iters = 0, time_s = 0, ub = 0, lb = 0, gap = 0, d_iter = 0, prop = 0;
    std::map<int, std::pair<double, int>> gap_by_iter;
  };
  std::map<Key, Agg> agg;

  if (fs::exists(dir)) {
    for (const auto& entry : fs::directory_iterator(dir)) {
      const std::string name = entry.path().filename().string();
      const size_t sep = name.rfind("__");
      if (sep == std::string::npos || entry.path().extension() != ".csv") continue;
      const std::string method = entry.path().stem().string().substr(sep + 2);
      if (!engine::parse_method(method)) continue;
      const std::string cls = class_of(name.substr(0, sep));

      std::ifstream f(entry.path());
      std::string line;
      std::getline(f, line);
      if (line != engine::kCsvHeader) continue;
      std::vector<std::vector<double>> rows;
      while (std::getline(f, line)) {
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() == 7) rows.push_back(std::move(row));
      }
      if (rows.empty()) continue;
      Agg& a = agg[{cls, method}];
      ++a.runs;
      const std::vector<double>& last = rows.back();
      a.iters += last[0];
      a.time_s += last[1];
      a.ub += last[2];
      a.lb += last[3];
      a.gap += last[4];
      a.prop += last[6];
      double diter = 0;
      for (const auto& r : rows) diter += r[5];
      a.d_iter += diter / rows.size();
      for (const auto& r : rows) {
        auto& [sum, count] = a.gap_by_iter[static_cast<int>(r[0])];
        sum += r[4];
        ++count;
      }
    }
  }

  const std::vector<std::string> method_order{"benders", "relu", "reg", "norm"};
  std::vector<std::string> classes;
  for (const auto& [key, a] : agg)
    if (classes.empty() || classes.back() != key.cls) classes.push_back(key.cls);

  std::cout << "class,method,runs,iters,time_s,ub,lb,gap_pct,d_iter,prop_relu\n";
  std::ofstream out;
  if (!out_csv.empty()) {
    out.open(out_csv);
    out << "class,method,runs,iters,time_s,ub,lb,gap_pct,d_iter,prop_relu\n";
    out.precision(10);
  }
  for (const std::string& cls : classes) {
    for (const std::string& method : method_order) {
      const auto it = agg.find({cls, method});
      if (it == agg.end()) continue;
      const Agg& a = it->second;
      const double n = a.runs;
      std::ostringstream row;
      row.precision(6);
      row << cls << "," << method << "," << a.runs << "," << a.iters / n << "," << a.time_s / n
          << "," << a.ub / n << "," << a.lb / n << "," << a.gap / n << "," << a.d_iter / n << ","
          << a.prop / n;
      std::cout << row.str() << "\n";
      if (out.is_open()) out << row.str() << "\n";
    }
  }
  if (!plot_csv.empty()) {
    std::ofstream pf(plot_csv);
    pf << "class,method,iter,mean_gap_pct\n";
    pf.precision(10);
    for (const auto& [key, a] : agg)
      for (const auto& [iter, sc] : a.gap_by_iter)
        pf << key.cls << "," << key.method << "," << iter << "," << sc.first / sc.second << "\n";
  }
  return 0;
}

int cmd_gen(const std::string& family, const std::string& out,
            const std::vector<int>& params, uint64_t seed, double frac_integer) {
  stoch::Instance inst;
  if (family == "example1") {
    inst = instances::example1();
  } else if (family == "random2s") {
    if (params.size() != 2) throw std::runtime_error("random2s needs --params d,scenarios");
    inst = instances::gen_random_two_stage(seed, params[0], params[1], frac_integer);
  } else if (family == "dcap") {
    if (params.size() != 4) throw std::runtime_error("dcap needs --params I,J,N,S");
    inst = instances::gen_dcap_like(params[0], params[1], params[2], params[3], seed);
  } else if (family == "clsp") {
    if (params.size() != 2) throw std::runtime_error("clsp needs --params P,N");
    inst = instances::gen_clsp_like(params[0], params[1], seed);
  } else {
    std::cerr << "unknown family '" << family << "'; expected example1,random2s,dcap,clsp\n";
    return 1;
  }
  stoch::save_instance(inst, out);
  std::cout << "wrote " << out << " (" << inst.tree.nodes.size() << " nodes)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decomposition solver for two-stage and multistage stochastic MIPs"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run the decomposition on instance files");
  std::vector<std::string> instances_arg, methods;
  std::string config_path, out_dir = "runs";
  bool alternating = false, verbose = false;
  double gap = 1e-3, time_limit = 3600;
  int max_iter = 5000;
  uint64_t seed = 0;
  run->add_option("instances", instances_arg, "instance JSON files")->required();
  run->add_option("--config", config_path, "config JSON mirroring the engine fields");
  run->add_option("--method", methods, "benders|relu|norm|reg (repeatable)")->delimiter(',');
  auto* alt_opt = run->add_flag("--alternating", alternating, "Benders first, ReLU on failure");
  auto* gap_opt = run->add_option("--gap", gap, "relative gap tolerance");
  auto* iter_opt = run->add_option("--max-iter", max_iter, "iteration limit");
  auto* time_opt = run->add_option("--time-limit", time_limit, "wall-clock limit in seconds");
  auto* seed_opt = run->add_option("--seed", seed, "seed recorded in the logs");
  run->add_option("--out-dir", out_dir, "output directory for CSV logs");
  run->add_flag("--verbose", verbose, "per-iteration trace to stderr");

  // verify
  auto* verify = app.add_subcommand("verify", "certify an exported cut pool against the oracle");
  std::string v_instance, v_pool;
  double v_resolution = 0.25;
  verify->add_option("instance", v_instance, "instance JSON")->required();
  verify->add_option("pool", v_pool, "cut pool JSON")->required();
  verify->add_option("--resolution", v_resolution, "grid refinement step");

  // report
  auto* report = app.add_subcommand("report", "aggregate run CSVs into a table");
  std::string r_dir, r_out, r_plot;
  report->add_option("dir", r_dir, "directory with run CSVs")->required();
  report->add_option("--out", r_out, "aggregated CSV path");
  report->add_option("--plot-data", r_plot, "gap-vs-iteration series CSV path");

  // gen
  auto* gen = app.add_subcommand("gen", "write a generated instance file");
  std::string g_family, g_out = "instance.json";
  std::vector<int> g_params;
  uint64_t g_seed = 1;
  double g_frac = 0.5;
  gen->add_option("family", g_family, "example1|random2s|dcap|clsp")->required();
  gen->add_option("--out", g_out, "output path");
  gen->add_option("--params", g_params, "family parameters")->delimiter(',');
  gen->add_option("--seed", g_seed, "generator seed");
  gen->add_option("--frac-integer", g_frac, "integer fraction of first-stage states");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(instances_arg, config_path, methods, alternating, alt_opt->count() > 0,
                     gap, gap_opt->count() > 0, max_iter, iter_opt->count() > 0, time_limit,
                     time_opt->count() > 0, seed, seed_opt->count() > 0, out_dir, verbose);
    if (verify->parsed()) return cmd_verify(v_instance, v_pool, v_resolution);
    if (report->parsed()) return cmd_report(r_dir, r_out, r_plot);
    if (gen->parsed()) return cmd_gen(g_family, g_out, g_params, g_seed, g_frac);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

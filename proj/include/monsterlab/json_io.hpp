// Copyright 2026 The monsterlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "monsterlab/free_group.hpp"
#include "monsterlab/graph.hpp"
#include "monsterlab/graph_source.hpp"
#include "monsterlab/harness.hpp"
#include "monsterlab/hyperbolic.hpp"
#include "monsterlab/labeling.hpp"
#include "monsterlab/pipeline.hpp"
#include "monsterlab/walks.hpp"

namespace monsterlab {

using json = nlohmann::ordered_json;

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

inline json to_json(const GraphCertificate& c) {
  return {{"vertex_count", c.vertex_count},
          {"edge_count", c.edge_count},
          {"connected", c.connected},
          {"girth", optional_json(c.girth)},
          {"diameter", optional_json(c.diameter)},
          {"min_degree", c.min_degree},
          {"max_degree", c.max_degree},
          {"lambda2", optional_json(c.lambda2)},
          {"lambda_abs", optional_json(c.lambda_abs)},
          {"admissible", c.admissible},
          {"ratio_C", c.ratio_C},
          {"d", c.d},
          {"C", c.C},
          {"log_girth_constant", optional_json(c.log_girth_constant)}};
}

// ---------------------------------------------------------------------------
// Labeling file: {graph, j, k, seed, labels: {dart-id: word-text}}

inline json to_json(const Labeling& l) {
  json labels = json::object();
  for (std::size_t e = 0; e < l.labels.size(); ++e) labels[std::to_string(e)] = to_text(l.labels[e]);
  return {{"graph", l.graph_ref}, {"j", l.j}, {"k", l.k}, {"seed", l.seed}, {"labels", std::move(labels)}};
}

/// Parses and validates a labeling of g; every dart must be labeled.
inline Labeling labeling_from_json(const json& in, const Graph& g) {
  Labeling l;
  l.graph_ref = in.value("graph", std::string{});
  l.j = in.at("j").get<int>();
  l.k = in.at("k").get<int>();
  l.seed = in.value("seed", std::uint64_t{0});
  l.labels.assign(g.dart_count(), {});
  std::vector<bool> seen(g.dart_count(), false);
  for (const auto& [key, value] : in.at("labels").items()) {
    const std::size_t e = std::stoul(key);
    if (e >= g.dart_count()) throw std::invalid_argument("labeling: dart id " + key + " out of range");
    l.labels[e] = parse_letters(value.get<std::string>());
    seen[e] = true;
  }
  for (std::size_t e = 0; e < seen.size(); ++e)
    if (!seen[e]) throw std::invalid_argument("labeling: dart " + std::to_string(e) + " has no label");
  validate_labeling(g, l);
  return l;
}

inline json to_json(const Presentation& p) {
  json rels = json::array();
  for (const Word& r : p.relators) rels.push_back(to_text(r));
  return {{"k", p.k}, {"cycle_rank", p.cycle_rank}, {"relators", std::move(rels)}};
}

inline json to_json(const WalkTrace& t) {
  return {{"vertices", t.vertices}, {"darts", t.darts}, {"lifted_distance_profile", t.lifted_distance_profile}};
}

inline json to_json(const EventEstimate& e) {
  return {{"event_name", e.event_name}, {"probability", e.probability}, {"trials", e.trials},
          {"stderr", e.std_error}};
}

inline json to_json(const ComparisonRow& r) {
  return {{"event", r.event},         {"n", r.n},
          {"mu_hat", r.mu_hat},       {"mu_bar_hat", r.mu_bar_hat},
          {"stderr_mu", r.stderr_mu}, {"stderr_mu_bar", r.stderr_mu_bar},
          {"margin", r.margin},       {"pass", r.pass}};
}

inline json to_json(const DriftEstimate& d) {
  return {{"ell_hat", d.ell}, {"speed", d.speed}, {"stderr", d.std_error}, {"n", d.n}, {"trials", d.trials}};
}

inline json to_json(const GpDecayEstimate& g) {
  json out = to_json(g.estimate);
  out["n"] = g.n;
  out["threshold"] = g.threshold;
  out["route_mismatches"] = g.route_mismatches;
  return out;
}

inline json to_json(const Parameters& p) {
  return {{"N", p.N}, {"xi", p.xi}, {"lambda_min", p.lambda_min}, {"C_prime", p.C_prime}};
}

inline json to_json(const ChainStats& c) {
  return {{"segment_dists", c.segment_dists}, {"products", c.products}, {"lower_bound", c.lower_bound}};
}

inline json to_json(const Witness& w) {
  return {{"trial", w.trial},
          {"start", w.start},
          {"path", w.path},
          {"chain", to_json(w.chain)},
          {"lower_bound", w.chain.lower_bound},
          {"threshold", w.threshold}};
}

inline json to_json(const Report& r) {
  json out;
  out["verdict"] = verdict_name(r.verdict);
  out["oracle_kind"] = r.oracle_kind;
  out["certificate"] = to_json(r.certificate);
  out["labeling"] = {{"seed", r.labeling_seed},
                     {"attempts", r.relabel_attempts},
                     {"relator_count", r.relator_count},
                     {"cycle_rank", r.cycle_rank},
                     {"relators_killed", r.relators_killed}};
  out["drift_estimate"] = r.drift_estimate ? to_json(*r.drift_estimate) : json(nullptr);
  out["gp_decay"] = json::array();
  for (const auto& g : r.gp_decay) out["gp_decay"].push_back(to_json(g));
  out["comparison_results"] = json::array();
  for (const auto& c : r.comparison_results) out["comparison_results"].push_back(to_json(c));
  out["lambda"] = r.lambda;
  out["parameters"] = r.parameters ? to_json(*r.parameters) : json(nullptr);
  out["feasibility"] = optional_json(r.feasibility);
  if (r.witness_search) {
    out["witness_search"] = {{"trials", r.witness_search->trials},
                             {"condition_hits", r.witness_search->condition_hits},
                             {"near_miss_frequency", r.witness_search->near_miss_frequency}};
    out["witness"] = r.witness_search->witness ? to_json(*r.witness_search->witness) : json(nullptr);
  } else {
    out["witness_search"] = nullptr;
    out["witness"] = nullptr;
  }
  out["stages"] = json::array();
  for (const auto& s : r.stages) out["stages"].push_back({{"stage", s.stage}, {"status", s.status}, {"detail", s.detail}});
  out["notes"] = r.notes;
  return out;
}

// ---------------------------------------------------------------------------
// Actions. Finite-graph action file:
//   {graph: <graph source>, basepoint: v, images: {"a1": [...], ...}, delta?: x}
// Images of inverse letters ("A1") are optional and must match if present.

inline GraphAction graph_action_from_json(const json& in, const std::filesystem::path& base_dir) {
  Graph x = graph_from_source(in.at("graph").get<std::string>(), base_dir);
  const auto basepoint = in.at("basepoint").get<VertexId>();
  std::map<int, Permutation> positive, negative;
  for (const auto& [name, perm] : in.at("images").items()) {
    const auto letters = parse_letters(name);
    if (letters.size() != 1) throw std::invalid_argument("action images: '" + name + "' is not a single generator");
    (letters[0].sign() > 0 ? positive : negative)[letters[0].index()] = perm.get<Permutation>();
  }
  std::vector<Permutation> images;
  for (int i = 1; i <= static_cast<int>(positive.size()); ++i) {
    const auto it = positive.find(i);
    if (it == positive.end()) throw std::invalid_argument("action images: missing a" + std::to_string(i));
    images.push_back(it->second);
  }
  for (const auto& [i, perm] : negative) {
    if (i > static_cast<int>(images.size()) || inverse_permutation(images[i - 1]) != perm)
      throw std::invalid_argument("action images: A" + std::to_string(i) + " is not the inverse of a" + std::to_string(i));
  }
  std::optional<double> delta;
  if (in.contains("delta")) delta = in.at("delta").get<double>();
  return GraphAction(std::move(x), basepoint, std::move(images), delta);
}

inline json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("'" + path.string() + "': " + e.what());
  }
}

inline GraphAction load_graph_action(const std::filesystem::path& path) {
  return graph_action_from_json(read_json_file(path), path.parent_path());
}

/// Oracle spec: {"kind": "trivial" | "tree" | "finite-graph", "k": k,
/// "action": <action file>} or the action file fields inline.
inline ActionOracle oracle_from_json(const json& in, int k, const std::filesystem::path& base_dir) {
  const std::string kind = in.at("kind").get<std::string>();
  const int kk = in.value("k", k);
  if (kind == "trivial") return TrivialAction(kk);
  if (kind == "tree") return TreeAction(kk);
  if (kind == "finite-graph") {
    if (in.contains("action")) {
      std::filesystem::path p = in.at("action").get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      return load_graph_action(p);
    }
    return graph_action_from_json(in, base_dir);
  }
  throw std::invalid_argument("unknown oracle kind '" + kind + "'");
}

inline PipelineConfig pipeline_config_from_json(const json& in, const std::filesystem::path& base_dir) {
  static const std::vector<std::string> known = {
      "graph", "d",  "C",       "j",      "k",      "C_prime",        "lambda",        "trials", "seed",
      "oracle", "drift_n", "gp_lengths", "events", "n_max", "witness_trials", "max_relabel_attempts"};
  for (const auto& [key, value] : in.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw std::invalid_argument("pipeline config: unknown field '" + key + "'");
  PipelineConfig cfg;
  cfg.base_dir = base_dir;
  cfg.graph = in.at("graph").get<std::string>();
  cfg.d = in.value("d", cfg.d);
  cfg.C = in.value("C", cfg.C);
  cfg.j = in.value("j", cfg.j);
  cfg.k = in.value("k", cfg.k);
  if (in.contains("C_prime") && !in.at("C_prime").is_null()) cfg.C_prime = in.at("C_prime").get<double>();
  cfg.lambda = in.value("lambda", cfg.lambda);
  cfg.trials = in.value("trials", cfg.trials);
  cfg.seed = in.value("seed", cfg.seed);
  cfg.oracle = oracle_from_json(in.at("oracle"), cfg.k, base_dir);
  cfg.drift_n = in.value("drift_n", cfg.drift_n);
  if (in.contains("gp_lengths")) cfg.gp_lengths = in.at("gp_lengths").get<std::vector<std::size_t>>();
  if (in.contains("events")) {
    cfg.events.clear();
    for (const auto& e : in.at("events")) cfg.events.push_back(parse_event(e.get<std::string>()));
  }
  cfg.n_max = in.value("n_max", cfg.n_max);
  if (in.contains("witness_trials")) cfg.witness_trials = in.at("witness_trials").get<std::size_t>();
  cfg.max_relabel_attempts = in.value("max_relabel_attempts", cfg.max_relabel_attempts);
  return cfg;
}

inline PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
  return pipeline_config_from_json(read_json_file(path), path.parent_path());
}

// ---------------------------------------------------------------------------
// CSV tables.

inline void write_comparison_csv(std::ostream& out, std::span<const ComparisonRow> rows) {
  out << "event,n,mu_hat,mu_bar_hat,margin,pass\n";
  for (const auto& r : rows)
    out << r.event << ',' << r.n << ',' << json(r.mu_hat).dump() << ',' << json(r.mu_bar_hat).dump() << ','
        << json(r.margin).dump() << ',' << (r.pass ? "true" : "false") << '\n';
}

inline void write_stage_csv(std::ostream& out, const Report& r) {
  out << "stage,status,detail\n";
  for (const auto& s : r.stages) out << s.stage << ',' << s.status << ",\"" << s.detail << "\"\n";
}

}  // namespace monsterlab

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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "monsterlab/graph.hpp"
#include "monsterlab/graph_source.hpp"
#include "monsterlab/harness.hpp"
#include "monsterlab/hyperbolic.hpp"
#include "monsterlab/labeling.hpp"
#include "monsterlab/walks.hpp"

namespace monsterlab {

struct PipelineConfig {
  std::string graph;  // graph source, see graph_from_source
  std::filesystem::path base_dir;
  std::size_t d = 3;
  double C = 1.0;
  int j = 1;
  int k = 2;
  std::optional<double> C_prime;  // default: girth / (2 ln|Omega|), so N <= girth / 2
  double lambda = 0.99;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  ActionOracle oracle;

  std::size_t drift_n = 200;
  std::vector<std::size_t> gp_lengths{25, 50, 100};
  std::vector<Event> events{{Event::Kind::len_ge, 1}, {Event::Kind::len_ge, 2}, {Event::Kind::len_ge, 3}};
  std::size_t n_max = 4;
  std::optional<std::size_t> witness_trials;  // default: trials
  std::size_t max_relabel_attempts = 10000;
};

enum class Verdict { elementary_action, relator_violation, no_witness, witness_found };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::elementary_action: return "elementary-action-detected";
    case Verdict::relator_violation: return "relator-violation";
    case Verdict::no_witness: return "no-witness-found-consistent-with-theorem";
    case Verdict::witness_found: return "witness-found-contradiction-certificate";
  }
  return "unknown";
}

/// CLI exit code of a verdict.
inline int verdict_exit_code(Verdict v) {
  switch (v) {
    case Verdict::no_witness: return 0;
    case Verdict::witness_found: return 3;
    case Verdict::relator_violation: return 4;
    case Verdict::elementary_action: return 5;
  }
  return 1;
}

struct StageRecord {
  std::string stage;
  std::string status;  // "ok", "skipped", "stop"
  std::string detail;
};

struct Report {
  std::string oracle_kind;
  GraphCertificate certificate;
  std::uint64_t labeling_seed = 0;
  std::size_t relabel_attempts = 0;
  std::size_t relator_count = 0;
  std::size_t cycle_rank = 0;
  bool relators_killed = false;
  std::optional<DriftEstimate> drift_estimate;
  std::vector<GpDecayEstimate> gp_decay;
  std::vector<ComparisonRow> comparison_results;
  double lambda = 0;
  std::optional<Parameters> parameters;
  std::optional<double> feasibility;
  std::optional<WitnessSearchResult> witness_search;
  Verdict verdict = Verdict::no_witness;
  std::vector<StageRecord> stages;
  std::vector<std::string> notes;
};

/// Error raised inside a pipeline stage, tagged with the stage name.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

namespace detail {

template <class Fn>
auto run_stage(const std::string& name, Fn&& fn) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const RelatorViolation&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

// Stream ids of the master seed, one per stage.
enum Stream : std::uint64_t { kLabel = 1, kDrift, kGpDecay, kCompare, kWitness };

}  // namespace detail

/// Certify, label, extract relators, estimate drift and Gromov-product decay,
/// compare measures, choose parameters, bound feasibility and search for a
/// witness path. Deterministic given the config.
inline Report run_pipeline(const PipelineConfig& cfg) {
  Report rep;
  rep.oracle_kind = kind_name(cfg.oracle);
  rep.lambda = cfg.lambda;
  auto stage = [&](std::string name, std::string status, std::string detail) {
    rep.stages.push_back({std::move(name), std::move(status), std::move(detail)});
  };

  const Graph g = detail::run_stage("load", [&] { return graph_from_source(cfg.graph, cfg.base_dir); });
  detail::run_stage("config", [&] {
    if (cfg.j < 1 || cfg.k < 2) throw std::invalid_argument("need j >= 1 and k >= 2");
    if (!(cfg.lambda > 0 && cfg.lambda < 1)) throw std::invalid_argument("lambda must lie in (0, 1)");
    if (cfg.trials < 1) throw std::invalid_argument("trials must be positive");
    const int action_k = std::visit([](const auto& a) { return a.generator_count(); }, cfg.oracle);
    if (action_k != cfg.k)
      throw std::invalid_argument("oracle acts with " + std::to_string(action_k) + " generators, config has k = " +
                                  std::to_string(cfg.k));
    return 0;
  });

  rep.certificate = detail::run_stage("certify", [&] { return check_admissible(g, cfg.d, cfg.C); });
  if (!rep.certificate.connected) throw StageError("certify", "graph is disconnected");
  stage("certify", "ok", rep.certificate.admissible ? "admissible" : "not admissible for the configured d, C");
  if (!rep.certificate.admissible)
    rep.notes.push_back("graph violates the degree or diameter/girth hypotheses; results are informational");

  // Relabel until the oracle kills every relator, up to the attempt cap.
  Labeling labeling;
  Presentation presentation;
  detail::run_stage("label", [&] {
    const std::size_t cap = std::max<std::size_t>(1, cfg.max_relabel_attempts);
    for (std::size_t attempt = 0; attempt < cap; ++attempt) {
      const std::uint64_t s = substream_seed(substream_seed(cfg.seed, detail::kLabel), attempt);
      Labeling l = sample_labeling(g, cfg.j, cfg.k, s, cfg.graph);
      Presentation p = relators(g, l);
      const bool killed = kills_relators(cfg.oracle, p);
      if (attempt == 0 || killed) {
        labeling = std::move(l);
        presentation = std::move(p);
        rep.relabel_attempts = attempt + 1;
        rep.relators_killed = killed;
      }
      if (killed) break;
    }
    return 0;
  });
  rep.labeling_seed = labeling.seed;
  rep.relator_count = presentation.relators.size();
  rep.cycle_rank = presentation.cycle_rank;
  stage("label", "ok",
        std::to_string(rep.relator_count) + " relators, " + (rep.relators_killed ? "killed" : "not killed") +
            " after " + std::to_string(rep.relabel_attempts) + " labeling(s)");

  const DriftEstimate drift = detail::run_stage("drift", [&] {
    return estimate_drift(cfg.oracle, cfg.k, cfg.drift_n, cfg.trials, substream_seed(cfg.seed, detail::kDrift));
  });
  rep.drift_estimate = drift;
  rep.notes.push_back("ell_hat is a heuristic stand-in for the non-effective drift constant ell");
  if (drift.ell == 0) {
    stage("drift", "stop", "no linear progress: the action is elementary");
    rep.verdict = Verdict::elementary_action;
    return rep;
  }
  stage("drift", "ok", "ell_hat = " + std::to_string(drift.ell));

  detail::run_stage("gp_decay", [&] {
    for (std::size_t i = 0; i < cfg.gp_lengths.size(); ++i)
      rep.gp_decay.push_back(estimate_gp_decay(cfg.oracle, cfg.k, drift.ell, cfg.gp_lengths[i], cfg.trials,
                                               substream_seed(substream_seed(cfg.seed, detail::kGpDecay), i)));
    return 0;
  });
  stage("gp_decay", "ok", std::to_string(rep.gp_decay.size()) + " lengths");

  rep.comparison_results = detail::run_stage("compare", [&] {
    return comparison_test(g, labeling, cfg.lambda, cfg.events, cfg.n_max, cfg.trials,
                           substream_seed(cfg.seed, detail::kCompare));
  });
  stage("compare", all_pass(rep.comparison_results) ? "ok" : "fail",
        std::to_string(rep.comparison_results.size()) + " (event, n) rows");

  const Parameters params = detail::run_stage("parameters", [&] {
    const double log_size = std::log(static_cast<double>(g.vertex_count()));
    double c_prime = 0;
    if (cfg.C_prime) {
      c_prime = *cfg.C_prime;
    } else {
      if (!rep.certificate.girth) throw std::invalid_argument("C' default needs a finite girth");
      if (!(log_size > 0)) throw std::invalid_argument("C' default needs at least 2 vertices");
      c_prime = static_cast<double>(*rep.certificate.girth) / (2.0 * log_size);
    }
    return choose_parameters(rep.certificate, drift.ell, c_prime);
  });
  rep.parameters = params;
  rep.feasibility = detail::run_stage("feasibility", [&] { return feasibility_bound(params.xi, cfg.lambda, params.N); });
  stage("parameters", "ok",
        "N = " + std::to_string(params.N) + ", xi = " + std::to_string(params.xi) +
            ", lambda_min = " + std::to_string(params.lambda_min));
  if (cfg.lambda <= params.lambda_min)
    rep.notes.push_back("configured lambda does not exceed lambda_min; the feasibility bound is not below 1");
  rep.notes.push_back("witness threshold is j * diam(graph) because the graph-to-orbit map is j-Lipschitz");

  try {
    rep.witness_search = detail::run_stage("witness", [&] {
      return std::visit(
          [&](const auto& a) {
            return witness_search(g, labeling, a, WitnessParams{params.N, params.xi, drift.ell, std::nullopt},
                                  cfg.witness_trials.value_or(cfg.trials),
                                  substream_seed(cfg.seed, detail::kWitness));
          },
          cfg.oracle);
    });
  } catch (const RelatorViolation& e) {
    stage("witness", "stop", e.what());
    rep.verdict = Verdict::relator_violation;
    return rep;
  }
  const bool found = rep.witness_search->witness.has_value();
  rep.verdict = found ? Verdict::witness_found : Verdict::no_witness;
  stage("witness", "ok",
        std::to_string(rep.witness_search->condition_hits) + " condition hits, " +
            (found ? "witness found" : "no witness"));
  return rep;
}

}  // namespace monsterlab

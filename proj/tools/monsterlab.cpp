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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "monsterlab/monsterlab.hpp"

namespace ml = monsterlab;

namespace {

constexpr int kExitError = 1;
constexpr int kExitInadmissible = 2;

struct Common {
  std::uint64_t seed = 1;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Master seed");
  cmd->add_option("--out", c.out, "Output file (default: stdout)");
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
}

std::string dump(const ml::json& j) { return j.dump(2) + "\n"; }

ml::Graph load_graph_arg(const std::string& source) {
  if (source.empty()) throw std::invalid_argument("--graph is required");
  return ml::graph_from_source(source);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"monsterlab: random labelings, random walks and hyperbolic geometry toolkit"};
  app.require_subcommand(1);

  std::string graph, labeling_file, action_file, config_file, events = "len_ge 1,len_ge 2,len_ge 3";
  std::string csv_file, stages_csv, presentation_file, words;
  std::size_t d = 3, nmax = 4, trials = 10000, steps = 10;
  double C = 1.0, lambda = 0.5, tol = ml::kCertificateTolerance;
  int j = 1, k = 2;
  std::optional<std::uint64_t> pipeline_seed;

  Common c_certify, c_label, c_walk, c_compare, c_geometry, c_pipeline;

  auto* certify = app.add_subcommand("certify", "Certify a graph against the degree and diameter/girth hypotheses");
  add_common(certify, c_certify);
  certify->add_option("--graph", graph, "Graph file or named graph")->required();
  certify->add_option("--d", d, "Maximum vertex degree");
  certify->add_option("--C", C, "Diameter/girth bound");
  certify->add_option("--tol", tol, "Eigenvalue tolerance");

  auto* label = app.add_subcommand("label", "Sample a symmetric labeling and its relators");
  add_common(label, c_label);
  label->add_option("--graph", graph, "Graph file or named graph")->required();
  label->add_option("--j", j, "Label length");
  label->add_option("--k", k, "Free group rank");
  label->add_option("--presentation", presentation_file, "Also write the relators as JSON");

  auto* walk = app.add_subcommand("walk", "Sample a stationary random walk");
  add_common(walk, c_walk);
  walk->add_option("--graph", graph, "Graph file or named graph")->required();
  walk->add_option("--n", steps, "Number of steps");
  walk->add_option("--labeling", labeling_file, "Labeling file; adds the pushforward word");

  auto* compare = app.add_subcommand("compare", "Event-level comparison of mu^n against lambda * mubar^n");
  add_common(compare, c_compare);
  compare->add_option("--graph", graph, "Graph file or named graph")->required();
  compare->add_option("--j", j, "Label length");
  compare->add_option("--k", k, "Free group rank");
  compare->add_option("--lambda", lambda, "Comparison constant in (0, 1)");
  compare->add_option("--events", events, "Comma-separated events: len_ge t, len_le t, ball r");
  compare->add_option("--nmax", nmax, "Largest walk length");
  compare->add_option("--trials", trials, "Monte Carlo trials per (measure, n)");
  compare->add_option("--labeling", labeling_file, "Labeling file (default: sample one from --seed)");

  auto* geometry = app.add_subcommand("geometry", "Inspect a finite-graph action");
  add_common(geometry, c_geometry);
  geometry->add_option("--action", action_file, "Action file")->required();
  geometry->add_option("--words", words, "Semicolon-separated words whose orbit points are examined");
  geometry->add_option("--graph", graph, "Labeled graph, with --labeling, for the relator check");
  geometry->add_option("--labeling", labeling_file, "Labeling file");

  auto* pipeline = app.add_subcommand("pipeline", "Run the full pipeline from a JSON config");
  add_common(pipeline, c_pipeline);
  pipeline->add_option("--config", config_file, "Pipeline config (JSON)")->required();
  pipeline->add_option("--csv", csv_file, "Write the comparison table as CSV");
  pipeline->add_option("--stages-csv", stages_csv, "Write the stage table as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitError;
  }

  try {
    if (*certify) {
      const ml::Graph g = load_graph_arg(graph);
      const auto cert = ml::check_admissible(g, d, C, tol);
      emit(c_certify.out, dump(ml::to_json(cert)));
      return cert.admissible ? 0 : kExitInadmissible;
    }
    if (*label) {
      const ml::Graph g = load_graph_arg(graph);
      const auto l = ml::sample_labeling(g, j, k, c_label.seed, graph);
      if (!presentation_file.empty()) emit(presentation_file, dump(ml::to_json(ml::relators(g, l))));
      emit(c_label.out, dump(ml::to_json(l)));
      return 0;
    }
    if (*walk) {
      const ml::Graph g = load_graph_arg(graph);
      const auto trace = ml::sample_walk(g, steps, c_walk.seed);
      ml::json out = ml::to_json(trace);
      if (!labeling_file.empty()) {
        const auto l = ml::labeling_from_json(ml::read_json_file(labeling_file), g);
        out["pushforward"] = ml::to_text(ml::pushforward(g, l, trace.darts));
      }
      emit(c_walk.out, dump(out));
      return 0;
    }
    if (*compare) {
      const auto parsed = ml::parse_events(events);
      if (!(lambda > 0 && lambda < 1)) throw std::invalid_argument("--lambda must lie in (0, 1)");
      if (trials < 1) throw std::invalid_argument("--trials must be positive");
      const ml::Graph g = load_graph_arg(graph);
      const auto l = labeling_file.empty()
                         ? ml::sample_labeling(g, j, k, ml::substream_seed(c_compare.seed, 0), graph)
                         : ml::labeling_from_json(ml::read_json_file(labeling_file), g);
      const auto rows = ml::comparison_test(g, l, lambda, parsed, nmax, trials, c_compare.seed);
      std::ostringstream csv;
      ml::write_comparison_csv(csv, rows);
      emit(c_compare.out, csv.str());
      return 0;
    }
    if (*geometry) {
      const ml::GraphAction a = ml::load_graph_action(action_file);
      ml::json out{{"kind", ml::GraphAction::kind},
                   {"vertices", a.space().vertex_count()},
                   {"basepoint", a.basepoint()},
                   {"generators", a.generator_count()},
                   {"delta", a.delta()}};
      if (!words.empty()) {
        std::vector<ml::VertexId> points;
        ml::json items = ml::json::array();
        std::istringstream in(words);
        std::string item;
        while (std::getline(in, item, ';')) {
          const ml::Word w = ml::parse_word(item);
          points.push_back(a.apply(w));
          items.push_back({{"word", ml::to_text(w)}, {"point", points.back()}, {"displacement", ml::displacement(a, w)}});
        }
        out["words"] = items;
        out["orbit_four_point_delta"] = ml::four_point_delta(std::span<const ml::VertexId>(points), a);
      }
      if (!labeling_file.empty()) {
        const ml::Graph g = load_graph_arg(graph);
        const auto l = ml::labeling_from_json(ml::read_json_file(labeling_file), g);
        out["kills_relators"] = ml::kills_relators(a, ml::relators(g, l));
      }
      emit(c_geometry.out, dump(out));
      return 0;
    }
    if (*pipeline) {
      ml::PipelineConfig cfg = ml::load_pipeline_config(config_file);
      if (pipeline->count("--seed") > 0) cfg.seed = c_pipeline.seed;
      const ml::Report rep = ml::run_pipeline(cfg);
      emit(c_pipeline.out, dump(ml::to_json(rep)));
      if (!csv_file.empty()) {
        std::ostringstream csv;
        ml::write_comparison_csv(csv, rep.comparison_results);
        emit(csv_file, csv.str());
      }
      if (!stages_csv.empty()) {
        std::ostringstream csv;
        ml::write_stage_csv(csv, rep);
        emit(stages_csv, csv.str());
      }
      return ml::verdict_exit_code(rep.verdict);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

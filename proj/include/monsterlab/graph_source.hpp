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

#include <cstdint>
#include <filesystem>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "monsterlab/graph.hpp"
#include "monsterlab/named_graphs.hpp"

namespace monsterlab {

/// Resolves a graph source: a named family ("petersen", "complete:4",
/// "cycle:6", "path:5", "complete_bipartite:3:3", "star:3",
/// "random_regular:30:3:7") or a graph file path relative to base_dir.
inline Graph graph_from_source(const std::string& source, const std::filesystem::path& base_dir = {}) {
  std::vector<std::string> parts;
  {
    std::istringstream in(source);
    std::string item;
    while (std::getline(in, item, ':')) parts.push_back(item);
  }
  auto num = [&](std::size_t i) -> std::uint64_t {
    if (i >= parts.size()) throw std::invalid_argument("graph source '" + source + "': missing parameter");
    std::size_t used = 0;
    const unsigned long long v = std::stoull(parts[i], &used);
    if (used != parts[i].size()) throw std::invalid_argument("graph source '" + source + "': bad number");
    return v;
  };
  auto arity = [&](std::size_t n) {
    if (parts.size() != n + 1)
      throw std::invalid_argument("graph source '" + source + "': expected " + std::to_string(n) + " parameters");
  };
  const std::string& name = parts.empty() ? source : parts[0];
  if (name == "petersen") {
    arity(0);
    return petersen_graph();
  }
  if (name == "complete") {
    arity(1);
    return complete_graph(num(1));
  }
  if (name == "cycle") {
    arity(1);
    return cycle_graph(num(1));
  }
  if (name == "path") {
    arity(1);
    return path_graph(num(1));
  }
  if (name == "star") {
    arity(1);
    return star_graph(num(1));
  }
  if (name == "complete_bipartite") {
    arity(2);
    return complete_bipartite_graph(num(1), num(2));
  }
  if (name == "random_regular") {
    arity(3);
    return random_regular(num(1), num(2), num(3));
  }
  std::filesystem::path p(source);
  if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
  return load_graph(p.string());
}

}  // namespace monsterlab

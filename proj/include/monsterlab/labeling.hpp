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
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "monsterlab/free_group.hpp"
#include "monsterlab/graph.hpp"
#include "monsterlab/rng.hpp"

namespace monsterlab {

using RawString = std::vector<Generator>;

/// Symmetric labeling of darts by raw (unreduced) strings of exactly j letters.
/// labels[involution(e)] is the formal inverse of labels[e].
struct Labeling {
  std::string graph_ref;
  int j = 1;
  int k = 2;
  std::uint64_t seed = 0;
  std::vector<RawString> labels;  // indexed by dart id

  const RawString& label(DartId e) const { return labels.at(e); }
};

inline RawString formal_inverse(std::span<const Generator> s) {
  RawString out;
  out.reserve(s.size());
  for (auto it = s.rbegin(); it != s.rend(); ++it) out.push_back(it->inverse());
  return out;
}

/// Full scan of the symmetry and length invariants; throws on the first violation.
inline void validate_labeling(const Graph& g, const Labeling& l) {
  if (l.j < 1) throw std::invalid_argument("labeling: j must be at least 1");
  if (l.k < 2) throw std::invalid_argument("labeling: k must be at least 2");
  if (l.labels.size() != g.dart_count())
    throw std::invalid_argument("labeling: label count does not match dart count");
  for (DartId e = 0; e < g.dart_count(); ++e) {
    const RawString& s = l.labels[e];
    if (s.size() != static_cast<std::size_t>(l.j))
      throw std::invalid_argument("labeling: dart " + std::to_string(e) + " label length != j");
    for (Generator x : s)
      if (x.index() > l.k)
        throw std::invalid_argument("labeling: dart " + std::to_string(e) + " uses generator beyond k");
    if (l.labels.at(g.involution(e)) != formal_inverse(s))
      throw std::invalid_argument("labeling: symmetry violated at dart " + std::to_string(e));
  }
}

/// Uniform element of A(graph, S^j). The designated dart of edge i draws its
/// string from substream i of `seed`; the reverse dart gets the formal inverse.
inline Labeling sample_labeling(const Graph& g, int j, int k, std::uint64_t seed,
                                std::string graph_ref = {}) {
  if (j < 1) throw std::invalid_argument("sample_labeling: j must be at least 1");
  if (k < 2) throw std::invalid_argument("sample_labeling: k must be at least 2");
  Labeling l{std::move(graph_ref), j, k, seed, std::vector<RawString>(g.dart_count())};
  std::uint64_t edge_index = 0;
  for (const Dart& d : g.darts()) {
    if (!g.is_designated(d.id)) continue;
    Rng rng = Rng::substream(seed, edge_index++);
    RawString s(static_cast<std::size_t>(j));
    for (Generator& x : s) x = uniform_generator(rng, k);
    l.labels[g.involution(d.id)] = formal_inverse(s);
    l.labels[d.id] = std::move(s);
  }
  return l;
}

inline void check_dart_chain(const Graph& g, std::span<const DartId> path) {
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path[i] >= g.dart_count())
      throw std::invalid_argument("path: dart id " + std::to_string(path[i]) + " out of range");
    if (i > 0 && g.dart(path[i - 1]).target != g.dart(path[i]).source)
      throw std::invalid_argument("path: darts " + std::to_string(i - 1) + " and " +
                                  std::to_string(i) + " are not contiguous");
  }
}

/// Endpoint in the Cayley tree of the path read from the identity: the
/// reduced product of the labels along the dart chain.
inline Word pushforward(const Graph& g, const Labeling& l, std::span<const DartId> path) {
  check_dart_chain(g, path);
  Word w;
  for (DartId e : path) w.multiply_right(l.label(e));
  return w;
}

struct Presentation {
  int k = 2;
  std::vector<Word> relators;  // freely reduced, nonempty
  std::size_t cycle_rank = 0;  // E - V + 1: number of fundamental cycles
};

struct SpanningTree {
  std::vector<DartId> parent;  // dart into v from its parent; kNoDart at the root
  std::vector<bool> tree_dart;
  static constexpr DartId kNoDart = static_cast<DartId>(-1);
};

inline SpanningTree bfs_spanning_tree(const Graph& g, VertexId root = 0) {
  SpanningTree t{std::vector<DartId>(g.vertex_count(), SpanningTree::kNoDart),
                 std::vector<bool>(g.dart_count(), false)};
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<VertexId> queue{root};
  seen[root] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId u = queue[head];
    for (DartId e : g.out_darts(u)) {
      const VertexId w = g.dart(e).target;
      if (seen[w]) continue;
      seen[w] = true;
      t.parent[w] = e;
      t.tree_dart[e] = t.tree_dart[g.involution(e)] = true;
      queue.push_back(w);
    }
  }
  return t;
}

/// Darts of the tree path from the root to v.
inline std::vector<DartId> tree_path_from_root(const Graph& g, const SpanningTree& t, VertexId v) {
  std::vector<DartId> path;
  while (t.parent[v] != SpanningTree::kNoDart) {
    path.push_back(t.parent[v]);
    v = g.dart(t.parent[v]).source;
  }
  return {path.rbegin(), path.rend()};
}

/// Fundamental cycle of a non-tree dart u -> v: root ~> u, the dart, v ~> root.
inline std::vector<DartId> fundamental_cycle(const Graph& g, const SpanningTree& t, DartId e) {
  std::vector<DartId> cycle = tree_path_from_root(g, t, g.dart(e).source);
  cycle.push_back(e);
  const auto back = tree_path_from_root(g, t, g.dart(e).target);
  for (auto it = back.rbegin(); it != back.rend(); ++it) cycle.push_back(g.involution(*it));
  return cycle;
}

/// Relators of G_alpha restricted to this graph: one per non-tree edge of the
/// BFS spanning tree from vertex 0. Relators that reduce to e are omitted.
inline Presentation relators(const Graph& g, const Labeling& l) {
  if (!is_connected(g)) throw std::invalid_argument("relators: graph is disconnected");
  const SpanningTree t = bfs_spanning_tree(g);
  Presentation p{l.k, {}, 0};
  for (const Dart& d : g.darts()) {
    if (!g.is_designated(d.id) || t.tree_dart[d.id]) continue;
    ++p.cycle_rank;
    Word r = pushforward(g, l, fundamental_cycle(g, t, d.id));
    if (!r.empty()) p.relators.push_back(std::move(r));
  }
  return p;
}

}  // namespace monsterlab

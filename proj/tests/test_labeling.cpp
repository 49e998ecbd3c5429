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

#include <catch2/catch.hpp>

#include <array>
#include <functional>

#include "monsterlab/labeling.hpp"
#include "monsterlab/named_graphs.hpp"
#include "oracles.hpp"

using namespace monsterlab;

namespace {

// Every closed walk of exactly `len` darts starting at `start`.
void closed_walks(const Graph& g, VertexId start, std::size_t len,
                  const std::function<void(const std::vector<DartId>&)>& visit) {
  std::vector<DartId> path;
  std::function<void(VertexId)> rec = [&](VertexId v) {
    if (path.size() == len) {
      if (v == start) visit(path);
      return;
    }
    for (DartId e : g.out_darts(v)) {
      path.push_back(e);
      rec(g.dart(e).target);
      path.pop_back();
    }
  };
  rec(start);
}

Word power(const Word& w, int m) {
  Word out;
  const Word base = m >= 0 ? w : inv(w);
  for (int i = 0; i < std::abs(m); ++i) out = mul(out, base);
  return out;
}

}  // namespace

TEST_CASE("sampled labelings are symmetric and well formed", "[labeling]") {
  const Graph g = petersen_graph();
  for (int j : {1, 2, 5})
    for (int k : {2, 3, 7}) {
      const Labeling l = sample_labeling(g, j, k, 100 + j * 10 + k);
      REQUIRE_NOTHROW(validate_labeling(g, l));
      for (DartId e = 0; e < g.dart_count(); ++e) {
        CHECK(l.label(e).size() == static_cast<std::size_t>(j));
        CHECK(Word::reduce(l.label(g.involution(e))) == inv(Word::reduce(l.label(e))));
      }
    }
  CHECK_THROWS_AS(sample_labeling(g, 0, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_labeling(g, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("validate_labeling rejects broken labelings", "[labeling]") {
  const Graph g = cycle_graph(4);
  Labeling l = sample_labeling(g, 2, 2, 5);
  Labeling bad = l;
  bad.labels[0][0] = bad.labels[0][0].inverse();
  CHECK_THROWS_AS(validate_labeling(g, bad), std::invalid_argument);
  bad = l;
  bad.labels.pop_back();
  CHECK_THROWS_AS(validate_labeling(g, bad), std::invalid_argument);
  bad = l;
  bad.labels[0].push_back(Generator(1, 1));
  CHECK_THROWS_AS(validate_labeling(g, bad), std::invalid_argument);
  bad = l;
  bad.labels[0][0] = Generator(3, 1);
  bad.labels[1] = formal_inverse(bad.labels[0]);
  CHECK_THROWS_AS(validate_labeling(g, bad), std::invalid_argument);
}

TEST_CASE("labels are deterministic in the seed", "[labeling]") {
  const Graph g = random_regular(200, 3, 3);
  const Labeling a = sample_labeling(g, 3, 4, 77), b = sample_labeling(g, 3, 4, 77);
  CHECK(a.labels == b.labels);
  CHECK(sample_labeling(g, 3, 4, 78).labels != a.labels);
}

TEST_CASE("letters of designated darts are uniform on the alphabet", "[labeling][stats]") {
  // Chi-square goodness of fit per letter position; 0.1% critical values.
  const Graph g = random_regular(2000, 3, 11);
  const int k = 3, j = 4;
  const std::size_t cells = 2 * k;
  const double critical_df5 = 20.515;
  const Labeling l = sample_labeling(g, j, k, 12345);
  for (int pos = 0; pos < j; ++pos) {
    std::vector<double> counts(cells, 0.0);
    double total = 0;
    for (const Dart& d : g.darts()) {
      if (!g.is_designated(d.id)) continue;
      counts[l.label(d.id)[pos].ordinal()] += 1;
      total += 1;
    }
    double chi2 = 0;
    for (double c : counts) chi2 += (c - total / cells) * (c - total / cells) / (total / cells);
    INFO("position " << pos << " chi2 " << chi2);
    CHECK(chi2 < critical_df5);
  }
}

TEST_CASE("pushforward of explicit paths", "[labeling]") {
  const Graph g = cycle_graph(3);
  Labeling l{"", 1, 3, 0, std::vector<RawString>(g.dart_count())};
  // Designated darts of the triangle 0-1, 1-2, 2-0 carry a1, a2, a3.
  int next = 1;
  for (const Dart& d : g.darts()) {
    if (!g.is_designated(d.id)) continue;
    l.labels[d.id] = {Generator(next++, 1)};
    l.labels[g.involution(d.id)] = formal_inverse(l.labels[d.id]);
  }
  REQUIRE_NOTHROW(validate_labeling(g, l));

  std::vector<DartId> around;
  VertexId v = 0;
  for (int step = 0; step < 3; ++step) {
    for (DartId e : g.out_darts(v))
      if (g.is_designated(e)) {
        around.push_back(e);
        v = g.dart(e).target;
        break;
      }
  }
  const Word w = pushforward(g, l, around);
  CHECK(w.size() == 3);
  CHECK(pushforward(g, l, std::vector<DartId>{}).empty());

  // Back-and-forth cancels.
  const std::vector<DartId> there_and_back{around[0], g.involution(around[0])};
  CHECK(pushforward(g, l, there_and_back).empty());

  // Non-contiguous chains are rejected.
  const std::vector<DartId> broken{around[0], around[0]};
  CHECK_THROWS_AS(pushforward(g, l, broken), std::invalid_argument);
  const std::vector<DartId> out_of_range{static_cast<DartId>(g.dart_count())};
  CHECK_THROWS_AS(pushforward(g, l, out_of_range), std::invalid_argument);

  const Presentation p = relators(g, l);
  CHECK(p.cycle_rank == 1);
  REQUIRE(p.relators.size() == 1);
  CHECK(p.relators[0].size() == 3);
  std::set<int> used;
  for (Generator x : p.relators[0].letters()) used.insert(x.index());
  CHECK(used == std::set<int>{1, 2, 3});
}

TEST_CASE("pushforward is a homomorphism on concatenation", "[labeling]") {
  const Graph g = petersen_graph();
  const Labeling l = sample_labeling(g, 3, 2, 9);
  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    std::vector<DartId> path;
    VertexId v = static_cast<VertexId>(rng.below(g.vertex_count()));
    const std::size_t len = rng.below(12);
    for (std::size_t i = 0; i < len; ++i) {
      const auto outs = g.out_darts(v);
      const DartId e = outs[rng.below(outs.size())];
      path.push_back(e);
      v = g.dart(e).target;
    }
    const std::size_t cut = path.empty() ? 0 : rng.below(path.size() + 1);
    const std::span<const DartId> all(path);
    CHECK(pushforward(g, l, all) == mul(pushforward(g, l, all.first(cut)), pushforward(g, l, all.subspan(cut))));
    // Reversed path maps to the inverse word.
    std::vector<DartId> rev;
    for (auto it = path.rbegin(); it != path.rend(); ++it) rev.push_back(g.involution(*it));
    CHECK(pushforward(g, l, rev) == inv(pushforward(g, l, all)));
  }
}

TEST_CASE("relator counts", "[labeling]") {
  // Trees have no relators.
  for (const Graph& tree : {path_graph(6), star_graph(5)}) {
    const Presentation p = relators(tree, sample_labeling(tree, 2, 2, 3));
    CHECK(p.cycle_rank == 0);
    CHECK(p.relators.empty());
  }
  // Cycle rank E - V + 1; with long labels no relator reduces to the identity.
  const Graph pet = petersen_graph();
  const Presentation p = relators(pet, sample_labeling(pet, 6, 3, 1));
  CHECK(p.cycle_rank == 15 - 10 + 1);
  CHECK(p.relators.size() <= p.cycle_rank);
  for (const Word& r : p.relators) CHECK_FALSE(r.empty());

  CHECK_THROWS_AS(relators(build_graph({{0, 1}, {2, 3}}, 4), sample_labeling(build_graph({{0, 1}, {2, 3}}, 4), 1, 2, 1)),
                  std::invalid_argument);
}

TEST_CASE("closed walks on the triangle map to powers of the relator", "[labeling]") {
  const Graph g = cycle_graph(3);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Labeling l = sample_labeling(g, 2, 3, seed);
    const Presentation p = relators(g, l);
    const SpanningTree t = bfs_spanning_tree(g);
    DartId chord = 0;
    for (const Dart& d : g.darts())
      if (g.is_designated(d.id) && !t.tree_dart[d.id]) chord = d.id;
    const Word r = pushforward(g, l, fundamental_cycle(g, t, chord));
    CHECK(p.relators == (r.empty() ? std::vector<Word>{} : std::vector<Word>{r}));
    for (std::size_t len = 0; len <= 8; ++len)
      closed_walks(g, 0, len, [&](const std::vector<DartId>& walk) {
        int net = 0;
        for (DartId e : walk) net += e == chord ? 1 : e == g.involution(chord) ? -1 : 0;
        CHECK(pushforward(g, l, walk) == power(r, net));
      });
  }
}

TEST_CASE("closed walks lie in the normal closure of the relators", "[labeling]") {
  const Graph g = complete_graph(4);
  const Labeling l = sample_labeling(g, 1, 2, 21);
  const Presentation p = relators(g, l);
  std::vector<std::vector<int>> rel;
  for (const Word& r : p.relators) rel.push_back(oracle::codes(r));
  // Root-based closed walks of length <= 4 use at most 4 chords.
  const auto ball = oracle::normal_closure_ball(rel, l.k, 0, 4);
  std::size_t walks = 0;
  for (std::size_t len = 0; len <= 4; ++len)
    closed_walks(g, 0, len, [&](const std::vector<DartId>& walk) {
      ++walks;
      CHECK(ball.count(oracle::codes(pushforward(g, l, walk))) == 1);
    });
  CHECK(walks > 10);
  // Closed walks from another vertex are conjugates; radius 1 covers K4.
  const auto conj_ball = oracle::normal_closure_ball(rel, l.k, 1, 3);
  for (std::size_t len = 0; len <= 3; ++len)
    closed_walks(g, 2, len, [&](const std::vector<DartId>& walk) {
      CHECK(conj_ball.count(oracle::codes(pushforward(g, l, walk))) == 1);
    });
}

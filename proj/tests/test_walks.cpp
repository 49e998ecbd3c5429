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

#include <cstdlib>

#include "monsterlab/named_graphs.hpp"
#include "monsterlab/walks.hpp"
#include "oracles.hpp"

using namespace monsterlab;

namespace {

// Triangle with a pendant path: degrees 2, 2, 3, 2, 1.
Graph lollipop() { return build_graph({{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}}, 5); }

double chi_square(const std::vector<double>& counts, const std::vector<double>& probs, double total) {
  double chi2 = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double e = probs[i] * total;
    chi2 += (counts[i] - e) * (counts[i] - e) / e;
  }
  return chi2;
}

std::vector<double> stationary(const Graph& g) {
  std::vector<double> pi(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    pi[v] = static_cast<double>(g.degree(v)) / static_cast<double>(g.dart_count());
  return pi;
}

// Triangle labeling whose relator is trivial: the word of a walk from u to v
// is f(u)^{-1} f(v) with |f| <= 2, so it never exceeds length 4.
Labeling potential_labeling(const Graph& tri) {
  Labeling l{"", 2, 2, 0, std::vector<RawString>(tri.dart_count())};
  auto set = [&](VertexId u, VertexId v, const char* text) {
    for (const Dart& d : tri.darts())
      if (d.source == u && d.target == v) {
        l.labels[d.id] = parse_letters(text);
        l.labels[tri.involution(d.id)] = formal_inverse(l.labels[d.id]);
      }
  };
  set(0, 1, "a1 a2");
  set(1, 2, "A2 a1");
  set(2, 0, "A1 A1");
  return l;
}

}  // namespace

TEST_CASE("stationary start is degree biased", "[walks][stats]") {
  const Graph star = star_graph(4);
  const std::size_t trials = 40000;
  Rng rng(1);
  std::size_t center = 0;
  for (std::size_t t = 0; t < trials; ++t) center += stationary_start(star, rng) == 0 ? 1 : 0;
  CHECK(static_cast<double>(center) / trials == Approx(0.5).margin(4 * std::sqrt(0.25 / trials)));

  const Graph pet = petersen_graph();
  std::vector<double> counts(10, 0.0);
  for (std::size_t t = 0; t < trials; ++t) counts[stationary_start(pet, rng)] += 1;
  CHECK(chi_square(counts, std::vector<double>(10, 0.1), trials) < 27.877);  // df 9, 0.1%
}

TEST_CASE("walk endpoints stay stationary", "[walks][stats]") {
  const Graph g = lollipop();
  const auto pi = stationary(g);
  for (std::size_t n : {1u, 5u, 10u}) {
    const std::size_t trials = 30000;
    std::vector<double> counts(g.vertex_count(), 0.0);
    Rng rng(100 + n);
    for (std::size_t t = 0; t < trials; ++t) counts[sample_walk(g, n, rng).vertices.back()] += 1;
    INFO("n = " << n);
    CHECK(chi_square(counts, pi, trials) < 18.467);  // df 4, 0.1%
  }
}

TEST_CASE("walk traces are consistent", "[walks]") {
  const Graph edge = path_graph(2);
  const WalkTrace t = sample_walk(edge, 2, 5);
  CHECK(t.lifted_distance_profile == std::vector<std::uint32_t>{1, 0});
  CHECK(t.lifted_distance() == 0);
  CHECK(sample_walk(edge, 0, 5).lifted_distance_profile.empty());

  const Graph pet = petersen_graph();
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const WalkTrace w = sample_walk(pet, 40, seed);
    REQUIRE(w.vertices.size() == 41);
    REQUIRE(w.darts.size() == 40);
    REQUIRE(w.lifted_distance_profile.size() == 40);
    std::uint32_t prev = 0;
    for (std::size_t i = 0; i < 40; ++i) {
      CHECK(pet.dart(w.darts[i]).source == w.vertices[i]);
      CHECK(pet.dart(w.darts[i]).target == w.vertices[i + 1]);
      const std::uint32_t d = w.lifted_distance_profile[i];
      CHECK((d == prev + 1 || d + 1 == prev));
      CHECK(d % 2 == (i + 1) % 2);
      prev = d;
    }
    const auto dist = bfs_distances(pet, w.vertices.front());
    CHECK(w.lifted_distance() >= dist[w.vertices.back()]);
  }
  CHECK(sample_walk(pet, 30, 9).vertices == sample_walk(pet, 30, 9).vertices);
}

TEST_CASE("lifted distance equals graph distance below half the girth", "[walks]") {
  const Graph g = random_regular(400, 3, 5);
  const std::size_t girth = oracle::girth(g);
  REQUIRE(girth >= 4);
  const std::size_t n = (girth - 1) / 2;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const WalkTrace w = sample_walk(g, n, seed);
    const auto dist = bfs_distances(g, w.vertices.front());
    for (std::size_t i = 0; i < n; ++i) CHECK(w.lifted_distance_profile[i] == dist[w.vertices[i + 1]]);
  }
}

TEST_CASE("lift distance law matches the tree chain", "[walks][stats]") {
  const Graph pet = petersen_graph();
  const std::size_t n = 7, trials = 50000;
  const auto law = oracle::tree_distance_law(3, n);
  std::vector<double> counts(n + 1, 0.0);
  Rng rng(3);
  for (std::size_t t = 0; t < trials; ++t) counts[sample_lift_distance(pet, n, rng)] += 1;
  std::vector<double> c, p;
  for (std::size_t l = 0; l <= n; ++l)
    if (law[l] > 0) {
      c.push_back(counts[l]);
      p.push_back(law[l]);
    } else {
      CHECK(counts[l] == 0);
    }
  CHECK(chi_square(c, p, trials) < 16.266);  // df 3, 0.1%
}

TEST_CASE("mu^n matches exact enumeration on the triangle", "[walks][stats]") {
  const Graph tri = cycle_graph(3);
  const Labeling l = sample_labeling(tri, 1, 2, 7);
  const std::size_t n = 3, trials = 100000;
  const auto exact = oracle::exact_mu(tri, l, n);
  double total = 0;
  for (const auto& [w, p] : exact) total += p;
  CHECK(total == Approx(1.0).epsilon(1e-12));

  std::map<std::vector<int>, double> counts;
  Rng rng(17);
  for (std::size_t t = 0; t < trials; ++t) counts[oracle::codes(sample_mu(tri, l, n, rng))] += 1;
  for (const auto& [w, c] : counts) CHECK(exact.count(w) == 1);
  for (const auto& [w, p] : exact) {
    const double freq = counts[w] / trials;
    INFO("word of length " << w.size() << " exact " << p << " observed " << freq);
    CHECK(std::abs(freq - p) <= 4 * std::sqrt(p * (1 - p) / trials) + 1e-12);
  }
}

TEST_CASE("mubar^n: parity and length law", "[walks][stats]") {
  const Graph pet = petersen_graph();
  Rng rng(23);
  for (int j : {1, 2, 3})
    for (std::size_t n : {4u, 5u})
      for (int t = 0; t < 200; ++t) CHECK(sample_mu_bar(pet, n, j, 2, rng).size() % 2 == (j * n) % 2);

  const std::size_t n = 6, trials = 60000;
  const int j = 2, k = 2;
  for (std::size_t thr : {2u, 4u, 8u}) {
    const double exact = oracle::exact_mu_bar_length_event(3, n, j, k, [&](std::size_t r) { return r >= thr; });
    const auto est = estimate_event([&](Rng& r) { return sample_mu_bar(pet, n, j, k, r); },
                                    [&](const Word& w) { return w.size() >= thr; }, trials, 31 + thr);
    INFO("threshold " << thr << " exact " << exact << " estimate " << est.probability);
    CHECK(std::abs(est.probability - exact) <= 4 * std::sqrt(exact * (1 - exact) / trials));
  }
}

TEST_CASE("event parsing", "[walks]") {
  const Event e = parse_event("len_ge 3");
  CHECK(e.kind == Event::Kind::len_ge);
  CHECK(e.param == 3);
  CHECK(e.name() == "len_ge 3");
  CHECK(parse_event("ball 2").kind == Event::Kind::ball);
  CHECK(parse_event("  len_le   0 ").name() == "len_le 0");
  const Word w = parse_word("a1 a2");
  CHECK(parse_event("len_ge 2")(w));
  CHECK_FALSE(parse_event("len_ge 3")(w));
  CHECK(parse_event("ball 2")(w));
  CHECK_FALSE(parse_event("len_le 1")(w));
  CHECK(parse_events("len_ge 1,len_le 2, ball 3").size() == 3);
  CHECK_THROWS_AS(parse_event("foo 1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_event("len_ge"), std::invalid_argument);
  CHECK_THROWS_AS(parse_event("len_ge -1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_event("len_ge 1 2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_events(""), std::invalid_argument);
}

TEST_CASE("estimates are reproducible across worker counts", "[walks]") {
  const Graph pet = petersen_graph();
  const Labeling l = sample_labeling(pet, 1, 2, 3);
  const auto events = parse_events("len_ge 1,len_ge 3");
  auto run = [&] { return comparison_test(pet, l, 0.5, events, 3, 5000, 99); };
  ::setenv("MONSTERLAB_THREADS", "1", 1);
  const auto single = run();
  ::setenv("MONSTERLAB_THREADS", "4", 1);
  const auto multi = run();
  ::unsetenv("MONSTERLAB_THREADS");
  REQUIRE(single.size() == multi.size());
  for (std::size_t i = 0; i < single.size(); ++i) {
    CHECK(single[i].mu_hat == multi[i].mu_hat);
    CHECK(single[i].mu_bar_hat == multi[i].mu_bar_hat);
  }
}

TEST_CASE("comparison test", "[walks]") {
  const Graph tri = cycle_graph(3);
  const Labeling l = potential_labeling(tri);
  REQUIRE_NOTHROW(validate_labeling(tri, l));
  const auto events = parse_events("len_ge 0,len_ge 5");
  const auto rows = comparison_test(tri, l, 0.9, events, 4, 20000, 1);
  REQUIRE(rows.size() == 8);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].n == i / 2 + 1);
    CHECK(rows[i].event == events[i % 2].name());
    CHECK(rows[i].margin == Approx(rows[i].mu_hat - 0.9 * rows[i].mu_bar_hat));
  }
  // The certain event always passes.
  CHECK(rows[0].mu_hat == 1.0);
  CHECK(rows[0].pass);
  // Words of a potential labeling never reach length 5; the comparison
  // measure does once the lift can reach distance 3.
  for (const auto& r : rows)
    if (r.event == "len_ge 5") {
      CHECK(r.mu_hat == 0.0);
      if (r.n >= 3) CHECK_FALSE(r.pass);
    }
  CHECK_FALSE(all_pass(rows));
  CHECK_THROWS_AS(comparison_test(tri, l, 1.0, events, 2, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(comparison_test(tri, l, 0.0, events, 2, 10, 1), std::invalid_argument);
}

TEST_CASE("degenerate samplers and events", "[walks]") {
  const Graph pet = petersen_graph();
  const Labeling l = sample_labeling(pet, 2, 2, 1);
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    CHECK(sample_mu(pet, l, 0, rng).empty());
    CHECK(sample_mu_bar(pet, 0, 2, 2, rng).empty());
  }
  const auto sampler = [&](Rng& r) { return sample_mu(pet, l, 3, r); };
  const auto yes = estimate_event(sampler, [](const Word&) { return true; }, 3000, 1);
  CHECK(yes.probability == 1.0);
  CHECK(yes.std_error == 0.0);
  CHECK(estimate_event(sampler, [](const Word&) { return false; }, 3000, 1).probability == 0.0);
  CHECK_THROWS_AS(estimate_event(sampler, [](const Word&) { return true; }, 0, 1), std::invalid_argument);
}

TEST_CASE("half-length event of the free walk matches the exact chain", "[walks][stats]") {
  const std::size_t n = 200, trials = 100000;
  const auto law = oracle::tree_distance_law(4, n);
  double exact = 0;
  for (std::size_t r = n / 2; r <= n; ++r) exact += law[r];
  const auto est = estimate_event([&](Rng& r) { return srw_endpoint(n, 2, r); },
                                  [&](const Word& w) { return w.size() >= n / 2; }, trials, 5);
  INFO("exact " << exact << " estimate " << est.probability);
  CHECK(std::abs(est.probability - exact) <= 3 * std::sqrt(exact * (1 - exact) / trials));
}

TEST_CASE("single-edge labelings are uniform over the alphabet", "[walks][labeling][stats]") {
  const Graph edge = path_graph(2);
  std::vector<double> counts(4, 0.0);
  const std::size_t trials = 100000;
  for (std::uint64_t seed = 0; seed < trials; ++seed) {
    const Labeling l = sample_labeling(edge, 1, 2, seed);
    counts[l.label(0)[0].ordinal()] += 1;
    CHECK(l.label(1)[0] == l.label(0)[0].inverse());
  }
  CHECK(chi_square(counts, std::vector<double>(4, 0.25), trials) < 16.266);  // df 3, 0.1%
}

TEST_CASE("two-dart path without cancellation", "[walks][labeling]") {
  const Graph p3 = path_graph(3);
  Labeling l{"", 2, 2, 0, std::vector<RawString>(p3.dart_count())};
  std::vector<DartId> path;
  for (DartId e : p3.out_darts(0)) path.push_back(e);
  for (DartId e : p3.out_darts(1))
    if (p3.dart(e).target == 2) path.push_back(e);
  REQUIRE(path.size() == 2);
  // Label the two darts along the path; their reverses get the formal inverses.
  for (std::size_t i = 0; i < 2; ++i) {
    const DartId e = path[i];
    l.labels[e] = parse_letters(i == 0 ? "a1 a2" : "a2 a1");
    l.labels[p3.involution(e)] = formal_inverse(l.labels[e]);
  }
  const Word w = pushforward(p3, l, path);
  CHECK(to_text(w) == "a1 a2 a2 a1");
  CHECK(w.size() == 4);
}

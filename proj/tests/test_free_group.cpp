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

#include "monsterlab/free_group.hpp"
#include "oracles.hpp"

using namespace monsterlab;

namespace {

const Generator a{1, 1}, A{1, -1}, b{2, 1}, B{2, -1}, c{3, 1};

Word random_word(Rng& rng, int k, std::size_t max_len) {
  std::vector<Generator> raw(rng.below(max_len + 1));
  for (auto& g : raw) g = uniform_generator(rng, k);
  return Word::reduce(raw);
}

bool is_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1].inverse()) return false;
  return true;
}

}  // namespace

TEST_CASE("reduce cancels adjacent inverse pairs", "[free_group]") {
  CHECK(Word::reduce({a, A}).empty());
  CHECK(Word::reduce({a, b, B, a}) == Word::reduce({a, a}));
  CHECK(Word::reduce({a, b, B, a}).size() == 2);
  CHECK(Word::reduce({a, b, A}).size() == 3);
  CHECK(to_text(Word::reduce({a, b, A})) == "a1 a2 A1");
}

TEST_CASE("mul and inv", "[free_group]") {
  CHECK(mul(Word::reduce({a, b}), Word::reduce({B, c})) == Word::reduce({a, c}));
  CHECK(inv(Word::reduce({a, b})) == Word::reduce({B, A}));
  Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    const Word x = random_word(rng, 3, 12), y = random_word(rng, 3, 12), z = random_word(rng, 3, 12);
    CHECK(mul(x, inv(x)).empty());
    CHECK(inv(inv(x)) == x);
    CHECK(mul(mul(x, y), z) == mul(x, mul(y, z)));
    CHECK(Word::reduce(x.letters()) == x);
    CHECK(is_reduced(mul(x, y)));
  }
}

TEST_CASE("tree distance", "[free_group]") {
  CHECK(tree_dist(Word{}, Word::reduce({a, b})) == 2);
  CHECK(tree_dist(Word::reduce({a, b}), Word::reduce({a, b})) == 0);
  CHECK(tree_dist(Word::reduce({a, b}), Word::reduce({a, c})) == 2);
  Rng rng(8);
  for (int i = 0; i < 300; ++i) {
    const Word x = random_word(rng, 2, 10), y = random_word(rng, 2, 10);
    CHECK(tree_dist(x, y) == mul(inv(x), y).size());
    CHECK(tree_dist(x, y) == tree_dist(y, x));
  }
}

TEST_CASE("Gromov products in the tree", "[free_group]") {
  const Word ab = Word::reduce({a, b}), ac = Word::reduce({a, c});
  CHECK(gromov_product_tree(ab, ac, Word{}).value() == 1.0);
  CHECK(gromov_product_tree(ab, ab, ac).value() == static_cast<double>(tree_dist(ac, ab)));
  CHECK(gromov_product_tree(ab, ac, ab).value() == 0.0);

  Rng rng(9);
  for (int i = 0; i < 2000; ++i) {
    const Word x = random_word(rng, 2, 8), y = random_word(rng, 2, 8);
    const Word z = random_word(rng, 2, 8), w = random_word(rng, 2, 8);
    // Common prefix of z^{-1}x and z^{-1}y is an independent computation.
    const auto lcp = common_prefix_length(mul(inv(z), x), mul(inv(z), y));
    CHECK(gromov_product_tree(x, y, z).doubled == 2 * static_cast<std::int64_t>(lcp));
    // Four-point condition with delta = 0.
    const auto xy = gromov_product_tree(x, y, w), xz = gromov_product_tree(x, z, w), yz = gromov_product_tree(y, z, w);
    CHECK(xy >= std::min(xz, yz));
  }
}

TEST_CASE("sample_srw trajectories", "[free_group]") {
  CHECK(sample_srw(0, 2, 1).size() == 1);
  CHECK(sample_srw(0, 2, 1).front().empty());
  CHECK_THROWS_AS(sample_srw(3, 1, 1), std::invalid_argument);
  CHECK(sample_srw(50, 3, 42) == sample_srw(50, 3, 42));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto path = sample_srw(31, 2, seed);
    for (std::size_t i = 0; i < path.size(); ++i) {
      CHECK(path[i].size() % 2 == i % 2);
      if (i > 0) CHECK(tree_dist(path[i - 1], path[i]) == 1);
    }
  }
}

TEST_CASE("drift of the free-group walk matches the birth-death chain", "[free_group][mc]") {
  for (int k : {2, 3}) {
    const std::size_t n = 100, trials = 20000;
    const double exact = oracle::free_mean_length(k, n) / static_cast<double>(n);
    Rng rng(static_cast<std::uint64_t>(k));
    double sum = 0, sum_sq = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      const double s = static_cast<double>(srw_endpoint(n, k, rng).size()) / static_cast<double>(n);
      sum += s;
      sum_sq += s * s;
    }
    const double mean = sum / trials;
    const double se = std::sqrt((sum_sq / trials - mean * mean) / trials);
    INFO("k = " << k << " mean " << mean << " exact " << exact);
    CHECK(std::abs(mean - exact) <= 3 * se);
    // Asymptotic speed 1 - 1/k; at n = 100 the boundary correction is O(1/n).
    CHECK(exact == Approx(1.0 - 1.0 / k).margin(0.02));
  }
}

TEST_CASE("word text format", "[free_group][io]") {
  CHECK(to_text(Word{}).empty());
  CHECK(parse_word("a1 A2 a10") == Word::reduce({a, B, Generator(10, 1)}));
  CHECK(parse_letters("a1 A1").size() == 2);
  CHECK(parse_word("a1 A1").empty());
  CHECK(parse_word("a1A2") == Word::reduce({a, B}));
  CHECK_THROWS(parse_letters("b1"));
  CHECK_THROWS(parse_letters("a"));
  CHECK_THROWS(parse_letters("a0"));
  Rng rng(10);
  for (int i = 0; i < 100; ++i) {
    const Word w = random_word(rng, 12, 20);
    CHECK(parse_word(to_text(w)) == w);
  }
}

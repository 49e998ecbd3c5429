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

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "monsterlab/free_group.hpp"
#include "monsterlab/graph.hpp"
#include "monsterlab/labeling.hpp"

namespace monsterlab {

/// An isometric action of F_k on a metric space X with a basepoint x0.
/// apply(w) is the orbit point w.x0; dist is the metric of X on orbit points.
template <class A>
concept IsometricAction = requires(const A& a, const Word& w, const typename A::point_type& p) {
  { a.basepoint() } -> std::convertible_to<typename A::point_type>;
  { a.apply(w) } -> std::same_as<typename A::point_type>;
  { a.dist(p, p) } -> std::convertible_to<double>;
  { a.delta() } -> std::convertible_to<double>;
  { a.generator_count() } -> std::convertible_to<int>;
};

/// Every word acts as the identity on a single point.
class TrivialAction {
 public:
  using point_type = int;
  static constexpr const char* kind = "trivial";

  explicit TrivialAction(int k = 2) : k_(k) {}
  point_type basepoint() const { return 0; }
  point_type apply(const Word&) const { return 0; }
  double dist(point_type, point_type) const { return 0.0; }
  double delta() const { return 0.0; }
  int generator_count() const { return k_; }

 private:
  int k_;
};

/// Left-multiplication action of F_k on its Cayley tree; the orbit point of w is w.
class TreeAction {
 public:
  using point_type = Word;
  static constexpr const char* kind = "tree";

  explicit TreeAction(int k = 2) : k_(k) {
    if (k < 2) throw std::invalid_argument("tree action: k must be at least 2");
  }
  point_type basepoint() const { return {}; }
  point_type apply(const Word& w) const { return w; }
  double dist(const point_type& p, const point_type& q) const {
    return static_cast<double>(tree_dist(p, q));
  }
  double delta() const { return 0.0; }
  int generator_count() const { return k_; }

 private:
  int k_;
};

using Permutation = std::vector<VertexId>;

inline bool is_identity(std::span<const VertexId> p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

inline Permutation inverse_permutation(std::span<const VertexId> p) {
  Permutation out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = static_cast<VertexId>(i);
  return out;
}

inline constexpr std::size_t kMaxExactDeltaVertices = 64;

template <class Dist>
double four_point_delta_of(std::size_t n, Dist&& d);

/// F_k acting on a finite connected graph X by automorphisms. Each generator
/// a_i maps to a vertex permutation preserving adjacency; a_i^{-1} maps to the
/// inverse permutation. Distances come from an all-pairs BFS table.
class GraphAction {
 public:
  using point_type = VertexId;
  static constexpr const char* kind = "finite-graph";

  GraphAction(Graph x, VertexId basepoint, std::vector<Permutation> generator_images,
              std::optional<double> delta = std::nullopt)
      : x_(std::move(x)), basepoint_(basepoint) {
    const std::size_t n = x_.vertex_count();
    if (basepoint_ >= n) throw std::invalid_argument("graph action: basepoint out of range");
    if (generator_images.empty()) throw std::invalid_argument("graph action: no generator images");
    if (!is_connected(x_)) throw std::invalid_argument("graph action: X must be connected");

    std::vector<Edge> edges = x_.edges();
    for (auto& [u, v] : edges)
      if (u > v) std::swap(u, v);
    std::sort(edges.begin(), edges.end());
    for (std::size_t i = 0; i < generator_images.size(); ++i) {
      const Permutation& p = generator_images[i];
      const std::string who = "graph action: image of a" + std::to_string(i + 1);
      if (p.size() != n) throw std::invalid_argument(who + " has wrong size");
      std::vector<bool> hit(n, false);
      for (VertexId v : p) {
        if (v >= n || hit[v]) throw std::invalid_argument(who + " is not a permutation");
        hit[v] = true;
      }
      std::vector<Edge> mapped;
      mapped.reserve(edges.size());
      for (const auto& [u, v] : edges) mapped.push_back(std::minmax(p[u], p[v]));
      std::sort(mapped.begin(), mapped.end());
      if (mapped != edges) throw std::invalid_argument(who + " does not preserve adjacency");
      images_.push_back(p);
      images_.push_back(inverse_permutation(p));
    }

    table_.resize(n * n);
    for (VertexId s = 0; s < n; ++s) {
      const auto d = bfs_distances(x_, s);
      std::copy(d.begin(), d.end(), table_.begin() + static_cast<std::ptrdiff_t>(s * n));
    }
    if (delta) {
      delta_ = *delta;
    } else if (n <= kMaxExactDeltaVertices) {
      delta_ = four_point_delta_of(n, [&](std::size_t a, std::size_t b) { return dist(a, b); });
    } else {
      throw std::invalid_argument("graph action: X has more than " +
                                  std::to_string(kMaxExactDeltaVertices) +
                                  " vertices; supply delta explicitly");
    }
  }

  point_type basepoint() const { return basepoint_; }

  /// Image of a single letter as a permutation of X.
  std::span<const VertexId> image(Generator g) const {
    if (g.ordinal() >= images_.size())
      throw std::out_of_range("graph action: generator a" + std::to_string(g.index()) + " has no image");
    return images_[g.ordinal()];
  }

  /// w.v for w = s_1 ... s_m: the rightmost letter acts first.
  point_type act(const Word& w, point_type v) const {
    for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) v = image(*it)[v];
    return v;
  }
  point_type apply(const Word& w) const { return act(w, basepoint_); }

  Permutation permutation(const Word& w) const {
    Permutation p(x_.vertex_count());
    for (VertexId v = 0; v < p.size(); ++v) p[v] = act(w, v);
    return p;
  }

  double dist(point_type p, point_type q) const {
    if (p >= x_.vertex_count() || q >= x_.vertex_count())
      throw std::out_of_range("graph action: unknown point");
    return static_cast<double>(table_[static_cast<std::size_t>(p) * x_.vertex_count() + q]);
  }
  double delta() const { return delta_; }
  int generator_count() const { return static_cast<int>(images_.size() / 2); }
  const Graph& space() const { return x_; }

 private:
  Graph x_;
  VertexId basepoint_;
  std::vector<Permutation> images_;  // indexed by Generator::ordinal()
  std::vector<std::uint32_t> table_;
  double delta_ = 0;
};

using ActionOracle = std::variant<TrivialAction, TreeAction, GraphAction>;

inline const char* kind_name(const ActionOracle& o) {
  return std::visit([](const auto& a) { return std::decay_t<decltype(a)>::kind; }, o);
}

/// d_X(x0, w.x0).
template <IsometricAction A>
double displacement(const A& a, const Word& w) {
  return a.dist(a.basepoint(), a.apply(w));
}

/// (p|q)_base from the action's metric.
template <IsometricAction A>
double gromov_product(const A& a, const typename A::point_type& p, const typename A::point_type& q,
                      const typename A::point_type& base) {
  return 0.5 * (a.dist(base, p) + a.dist(base, q) - a.dist(p, q));
}

/// True iff every relator acts as the identity, i.e. the action factors
/// through the quotient. The tree action is free, so only empty relators pass.
inline bool kills_relators(const TrivialAction&, const Presentation&) { return true; }

inline bool kills_relators(const TreeAction&, const Presentation& p) {
  return std::all_of(p.relators.begin(), p.relators.end(), [](const Word& r) { return r.empty(); });
}

inline bool kills_relators(const GraphAction& a, const Presentation& p) {
  return std::all_of(p.relators.begin(), p.relators.end(),
                     [&](const Word& r) { return is_identity(a.permutation(r)); });
}

inline bool kills_relators(const ActionOracle& o, const Presentation& p) {
  return std::visit([&](const auto& a) { return kills_relators(a, p); }, o);
}

/// Pull-back pseudo-metric between the endpoints of a path in the labeled graph.
template <IsometricAction A>
double pullback_delta(const A& a, const Graph& g, const Labeling& l, std::span<const DartId> path) {
  return displacement(a, pushforward(g, l, path));
}

template <class Dist>
double four_point_delta_of(std::size_t n, Dist&& d) {
  double best = 0;
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        const double xy = 0.5 * (d(w, x) + d(w, y) - d(x, y));
        for (std::size_t z = 0; z < n; ++z) {
          const double xz = 0.5 * (d(w, x) + d(w, z) - d(x, z));
          const double yz = 0.5 * (d(w, y) + d(w, z) - d(y, z));
          best = std::max(best, std::min(xz, yz) - xy);
        }
      }
  return best;
}

/// Four-point hyperbolicity constant of a finite point set: the largest
/// violation of (x|y)_w >= min((x|z)_w, (y|z)_w). Zero for fewer than 4 points.
template <IsometricAction A>
double four_point_delta(std::span<const typename A::point_type> points, const A& a) {
  if (points.size() < 4) return 0.0;
  return four_point_delta_of(points.size(),
                             [&](std::size_t i, std::size_t j) { return a.dist(points[i], points[j]); });
}

/// Lower bound on the endpoint distance of a chain of xi segments:
///   sum_i ( D_i - G_i - G_{i+1} - 50 delta ),
/// where D has xi entries and G has xi + 1 (G_0 and G_xi are the boundary
/// products, zero when the chain starts and ends at repeated points).
inline double chaining_lower_bound(std::span<const double> segment_dists,
                                   std::span<const double> products, double delta) {
  if (products.size() != segment_dists.size() + 1)
    throw std::invalid_argument("chaining_lower_bound: expected " +
                                std::to_string(segment_dists.size() + 1) + " Gromov products, got " +
                                std::to_string(products.size()));
  double total = 0;
  for (std::size_t i = 0; i < segment_dists.size(); ++i)
    total += segment_dists[i] - products[i] - products[i + 1] - 50.0 * delta;
  return total;
}

struct ChainStats {
  std::vector<double> segment_dists;
  std::vector<double> products;
  double lower_bound = 0;
};

/// Segment distances and junction products of the chain p_0, ..., p_xi, with
/// the boundary convention p_{-1} = p_0 and G_xi = 0.
template <IsometricAction A>
ChainStats chain_stats(const A& a, std::span<const typename A::point_type> points) {
  if (points.size() < 2) throw std::invalid_argument("chain_stats: need at least two points");
  ChainStats s;
  const std::size_t xi = points.size() - 1;
  for (std::size_t i = 0; i < xi; ++i) s.segment_dists.push_back(a.dist(points[i], points[i + 1]));
  s.products.push_back(0.0);
  for (std::size_t i = 1; i < xi; ++i)
    s.products.push_back(gromov_product(a, points[i - 1], points[i + 1], points[i]));
  s.products.push_back(0.0);
  s.lower_bound = chaining_lower_bound(s.segment_dists, s.products, a.delta());
  return s;
}

}  // namespace monsterlab

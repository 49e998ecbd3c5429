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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "monsterlab/parallel.hpp"
#include "monsterlab/rng.hpp"

namespace monsterlab {

using VertexId = std::uint32_t;
using DartId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

inline constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

struct Dart {
  DartId id;
  VertexId source;
  VertexId target;
};

/// Finite multigraph in dart form. Each undirected edge is a pair of darts
/// exchanged by a fixed-point-free involution. Immutable after construction.
class Graph {
 public:
  Graph(std::size_t vertex_count, std::vector<Dart> darts, std::vector<DartId> involution)
      : vertex_count_(vertex_count), darts_(std::move(darts)), involution_(std::move(involution)) {
    if (vertex_count_ == 0) throw std::invalid_argument("graph: zero vertices");
    if (involution_.size() != darts_.size())
      throw std::invalid_argument("graph: involution size does not match dart count");
    for (std::size_t e = 0; e < darts_.size(); ++e) {
      const Dart& d = darts_[e];
      if (d.id != e) throw std::invalid_argument("graph: dart ids must be 0..n-1 in order");
      if (d.source >= vertex_count_ || d.target >= vertex_count_)
        throw std::invalid_argument("graph: dart endpoint out of range");
      const DartId r = involution_[e];
      if (r >= darts_.size() || r == e || involution_[r] != e)
        throw std::invalid_argument("graph: involution is not a fixed-point-free involution");
      if (darts_[r].source != d.target || darts_[r].target != d.source)
        throw std::invalid_argument("graph: involution does not reverse dart " + std::to_string(e));
    }
    offsets_.assign(vertex_count_ + 1, 0);
    for (const Dart& d : darts_) ++offsets_[d.source + 1];
    for (std::size_t v = 0; v < vertex_count_; ++v) {
      if (offsets_[v + 1] == 0)
        throw std::invalid_argument("graph: isolated vertex " + std::to_string(v));
      offsets_[v + 1] += offsets_[v];
    }
    out_.resize(darts_.size());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const Dart& d : darts_) out_[fill[d.source]++] = d.id;
  }

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t dart_count() const { return darts_.size(); }
  std::size_t edge_count() const { return darts_.size() / 2; }

  const Dart& dart(DartId e) const { return darts_.at(e); }
  std::span<const Dart> darts() const { return darts_; }
  DartId involution(DartId e) const { return involution_.at(e); }

  std::span<const DartId> out_darts(VertexId v) const {
    return std::span<const DartId>(out_).subspan(offsets_.at(v), offsets_[v + 1] - offsets_[v]);
  }
  std::size_t degree(VertexId v) const { return offsets_.at(v + 1) - offsets_[v]; }

  /// Designated dart of each edge pair: the one with the lower id.
  bool is_designated(DartId e) const { return e < involution_[e]; }

  /// One (source, target) pair per edge, in designated-dart order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (const Dart& d : darts_)
      if (is_designated(d.id)) out.emplace_back(d.source, d.target);
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.involution_ == b.involution_ &&
           std::equal(a.darts_.begin(), a.darts_.end(), b.darts_.begin(), b.darts_.end(),
                      [](const Dart& x, const Dart& y) {
                        return x.id == y.id && x.source == y.source && x.target == y.target;
                      });
  }

 private:
  std::size_t vertex_count_;
  std::vector<Dart> darts_;
  std::vector<DartId> involution_;
  std::vector<std::size_t> offsets_;
  std::vector<DartId> out_;
};

/// Edge i becomes darts 2i (u -> v) and 2i+1 (v -> u).
inline Graph build_graph(std::span<const Edge> edges, std::size_t vertex_count) {
  if (vertex_count == 0) throw std::invalid_argument("build_graph: zero vertices");
  std::vector<Dart> darts;
  std::vector<DartId> involution;
  darts.reserve(2 * edges.size());
  involution.reserve(2 * edges.size());
  for (const auto& [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count)
      throw std::out_of_range("build_graph: vertex index out of range in edge (" +
                              std::to_string(u) + ", " + std::to_string(v) + ")");
    const auto e = static_cast<DartId>(darts.size());
    darts.push_back({e, u, v});
    darts.push_back({e + 1, v, u});
    involution.push_back(e + 1);
    involution.push_back(e);
  }
  return Graph(vertex_count, std::move(darts), std::move(involution));
}

inline Graph build_graph(std::initializer_list<Edge> edges, std::size_t vertex_count) {
  return build_graph(std::span<const Edge>(edges.begin(), edges.size()), vertex_count);
}

/// BFS distances from `source`; kUnreached for vertices in other components.
inline std::vector<std::uint32_t> bfs_distances(const Graph& g, VertexId source) {
  std::vector<std::uint32_t> dist(g.vertex_count(), kUnreached);
  std::vector<VertexId> queue{source};
  dist.at(source) = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId u = queue[head];
    for (DartId e : g.out_darts(u)) {
      const VertexId w = g.dart(e).target;
      if (dist[w] == kUnreached) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

inline bool is_connected(const Graph& g) {
  const auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](std::uint32_t d) { return d == kUnreached; });
}

namespace detail {

// Shortest cycle through the BFS ball of `source`, or kUnreached. Darts that
// reverse the parent dart are skipped, so loops and parallel edges count.
inline std::uint32_t shortest_cycle_from(const Graph& g, VertexId source) {
  std::vector<std::uint32_t> dist(g.vertex_count(), kUnreached);
  std::vector<DartId> parent(g.vertex_count(), std::numeric_limits<DartId>::max());
  std::vector<VertexId> queue{source};
  dist[source] = 0;
  std::uint32_t best = kUnreached;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId u = queue[head];
    if (best != kUnreached && 2 * dist[u] + 1 >= best) break;
    for (DartId e : g.out_darts(u)) {
      if (parent[u] != std::numeric_limits<DartId>::max() && e == g.involution(parent[u])) continue;
      const VertexId w = g.dart(e).target;
      if (dist[w] == kUnreached) {
        dist[w] = dist[u] + 1;
        parent[w] = e;
        queue.push_back(w);
      } else {
        best = std::min(best, dist[u] + dist[w] + 1);
      }
    }
  }
  return best;
}

}  // namespace detail

/// Length of the shortest cycle; nullopt for forests. Per-vertex BFS.
inline std::optional<std::size_t> girth(const Graph& g) {
  const auto per_source = parallel_map<std::uint32_t>(
      g.vertex_count(), [&](std::size_t v) { return detail::shortest_cycle_from(g, static_cast<VertexId>(v)); });
  const std::uint32_t best = *std::min_element(per_source.begin(), per_source.end());
  if (best == kUnreached) return std::nullopt;
  return best;
}

/// Maximum BFS eccentricity. Throws std::invalid_argument on disconnected input.
inline std::size_t diameter(const Graph& g) {
  const auto ecc = parallel_map<std::uint32_t>(g.vertex_count(), [&](std::size_t v) {
    const auto dist = bfs_distances(g, static_cast<VertexId>(v));
    return *std::max_element(dist.begin(), dist.end());
  });
  const std::uint32_t d = *std::max_element(ecc.begin(), ecc.end());
  if (d == kUnreached) throw std::invalid_argument("diameter: graph is disconnected");
  return d;
}

/// Configuration model conditioned on simple and connected. Attempt a draws
/// from substream a of `seed`; at most kRandomRegularBudget attempts.
inline constexpr std::size_t kRandomRegularBudget = 1000;

inline Graph random_regular(std::size_t n, std::size_t deg, std::uint64_t seed) {
  if ((n * deg) % 2 != 0)
    throw std::invalid_argument("random_regular: n*deg = " + std::to_string(n * deg) + " is odd");
  if (deg < 3) throw std::invalid_argument("random_regular: degree must be at least 3");
  if (n <= deg) throw std::invalid_argument("random_regular: need n > deg");

  std::vector<VertexId> stubs(n * deg);
  std::vector<Edge> edges(n * deg / 2);
  for (std::size_t attempt = 0; attempt < kRandomRegularBudget; ++attempt) {
    Rng rng = Rng::substream(seed, attempt);
    for (std::size_t i = 0; i < stubs.size(); ++i) stubs[i] = static_cast<VertexId>(i / deg);
    for (std::size_t i = stubs.size() - 1; i > 0; --i)
      std::swap(stubs[i], stubs[rng.below(i + 1)]);

    bool simple = true;
    std::set<Edge> seen;
    for (std::size_t i = 0; i < edges.size() && simple; ++i) {
      auto [u, v] = std::minmax(stubs[2 * i], stubs[2 * i + 1]);
      simple = u != v && seen.emplace(u, v).second;
      edges[i] = {u, v};
    }
    if (!simple) continue;
    std::sort(edges.begin(), edges.end());
    Graph g = build_graph(edges, n);
    if (is_connected(g)) return g;
  }
  throw std::runtime_error("random_regular: rejection budget exhausted after " +
                           std::to_string(kRandomRegularBudget) + " attempts");
}

struct SpectralEstimate {
  double lambda2 = 0;     // second-largest eigenvalue by signed value
  double lambda_abs = 0;  // largest |eigenvalue| over the nontrivial spectrum
  std::size_t iterations = 0;
};

inline constexpr std::size_t kSpectralIterationBudget = 2'000'000;

namespace detail {

// Symmetric normalization S = D^{-1/2} A D^{-1/2} is similar to the transition
// operator D^{-1} A; its top eigenvector is sqrt(degree).
struct NormalizedAdjacency {
  const Graph& g;
  std::vector<double> inv_sqrt_deg;
  std::vector<double> top;

  explicit NormalizedAdjacency(const Graph& graph) : g(graph) {
    double total = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) total += static_cast<double>(g.degree(v));
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      const double d = static_cast<double>(g.degree(v));
      inv_sqrt_deg.push_back(1.0 / std::sqrt(d));
      top.push_back(std::sqrt(d / total));
    }
  }

  void apply(std::span<const double> x, std::span<double> y) const {
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      double acc = 0;
      for (DartId e : g.out_darts(v)) {
        const VertexId w = g.dart(e).target;
        acc += inv_sqrt_deg[w] * x[w];
      }
      y[v] = inv_sqrt_deg[v] * acc;
    }
  }

  void deflate(std::span<double> x) const {
    double dot = 0;
    for (std::size_t i = 0; i < x.size(); ++i) dot += top[i] * x[i];
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= dot * top[i];
  }
};

inline double normalize(std::span<double> x) {
  double n = 0;
  for (double v : x) n += v * v;
  n = std::sqrt(n);
  for (double& v : x) v /= n;
  return n;
}

// Top eigenvalue of op restricted to the complement of the stationary vector,
// for a positive semidefinite op. Stops once the residual |op x - theta x| is
// below tol, which bounds the eigenvalue error by tol.
template <class Op>
std::pair<double, std::size_t> deflated_power(const NormalizedAdjacency& s, Op&& op, double tol) {
  const std::size_t n = s.g.vertex_count();
  std::vector<double> x(n), y(n);
  Rng rng(0x5eedULL);
  for (double& v : x) v = rng.uniform01() - 0.5;
  s.deflate(x);
  normalize(x);
  for (std::size_t it = 1; it <= kSpectralIterationBudget; ++it) {
    op(x, y);
    s.deflate(y);
    double theta = 0;
    for (std::size_t i = 0; i < n; ++i) theta += x[i] * y[i];
    double residual = 0;
    for (std::size_t i = 0; i < n; ++i) residual += (y[i] - theta * x[i]) * (y[i] - theta * x[i]);
    if (std::sqrt(residual) < tol) return {theta, it};
    if (normalize(y) == 0) return {0.0, it};
    std::swap(x, y);
  }
  throw std::runtime_error("spectral_gap: power iteration did not converge within " +
                           std::to_string(kSpectralIterationBudget) + " iterations");
}

}  // namespace detail

/// Second-largest eigenvalue of the simple-random-walk transition operator and
/// the largest nontrivial eigenvalue in absolute value, both to within tol.
inline SpectralEstimate spectral_estimate(const Graph& g, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("spectral_gap: tol must be positive");
  if (!is_connected(g)) throw std::invalid_argument("spectral_gap: graph is disconnected");
  SpectralEstimate out;
  if (g.vertex_count() == 1) return out;
  detail::NormalizedAdjacency s(g);
  const std::size_t n = g.vertex_count();
  std::vector<double> tmp(n);

  // (S + I) / 2 has spectrum in [0, 1]; its top deflated eigenvalue maps back to lambda2.
  auto shifted = [&](std::span<const double> x, std::span<double> y) {
    s.apply(x, y);
    for (std::size_t i = 0; i < n; ++i) y[i] = 0.5 * (y[i] + x[i]);
  };
  const auto [mu, it1] = detail::deflated_power(s, shifted, tol / 2);
  out.lambda2 = 2 * mu - 1;

  auto squared = [&](std::span<const double> x, std::span<double> y) {
    s.apply(x, tmp);
    s.apply(tmp, y);
  };
  // The square root loosens the bound near zero; lambda_abs is informational.
  const auto [sq, it2] = detail::deflated_power(s, squared, tol);
  out.lambda_abs = std::sqrt(std::max(0.0, sq));
  out.lambda_abs = std::max(out.lambda_abs, std::abs(out.lambda2));
  out.iterations = it1 + it2;
  return out;
}

inline double spectral_gap(const Graph& g, double tol) { return spectral_estimate(g, tol).lambda2; }

struct GraphCertificate {
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  bool connected = false;
  std::optional<std::size_t> girth;     // nullopt: infinite (forest)
  std::optional<std::size_t> diameter;  // nullopt: disconnected
  std::size_t min_degree = 0;
  std::size_t max_degree = 0;
  std::optional<double> lambda2;  // nullopt: not computed (disconnected or no convergence)
  std::optional<double> lambda_abs;
  bool admissible = false;
  double ratio_C = 0;  // diameter / girth, 0 when girth is infinite
  std::size_t d = 0;   // configured degree bound
  double C = 0;        // configured diameter/girth bound
  std::optional<double> log_girth_constant;  // girth / ln|V|
};

inline constexpr double kCertificateTolerance = 1e-9;

/// Inadmissibility is reported in the certificate, never thrown.
inline GraphCertificate check_admissible(const Graph& g, std::size_t d, double C,
                                         double tol = kCertificateTolerance) {
  GraphCertificate cert;
  cert.vertex_count = g.vertex_count();
  cert.edge_count = g.edge_count();
  cert.d = d;
  cert.C = C;
  cert.min_degree = std::numeric_limits<std::size_t>::max();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    cert.min_degree = std::min(cert.min_degree, g.degree(v));
    cert.max_degree = std::max(cert.max_degree, g.degree(v));
  }
  cert.connected = is_connected(g);
  cert.girth = girth(g);
  if (cert.connected) {
    cert.diameter = diameter(g);
    try {
      const SpectralEstimate s = spectral_estimate(g, tol);
      cert.lambda2 = s.lambda2;
      cert.lambda_abs = s.lambda_abs;
    } catch (const std::runtime_error&) {
    }
  }
  if (cert.girth && cert.diameter)
    cert.ratio_C = static_cast<double>(*cert.diameter) / static_cast<double>(*cert.girth);
  if (cert.girth && g.vertex_count() > 1)
    cert.log_girth_constant =
        static_cast<double>(*cert.girth) / std::log(static_cast<double>(g.vertex_count()));
  const bool ratio_ok =
      cert.diameter && (!cert.girth || static_cast<double>(*cert.diameter) <=
                                           C * static_cast<double>(*cert.girth));
  cert.admissible = cert.connected && cert.min_degree >= 3 && cert.max_degree <= d && ratio_ok;
  return cert;
}

// ---------------------------------------------------------------------------
// Text format: "vertices <n>" then "edge <u> <v>" lines; '#' starts a comment.

inline Graph read_graph(std::istream& in) {
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    auto fail = [&](const std::string& why) {
      throw std::runtime_error("graph file line " + std::to_string(lineno) + ": " + why);
    };
    if (key == "vertices") {
      long long v = -1;
      if (!(ls >> v) || v <= 0) fail("expected positive vertex count");
      if (n) fail("duplicate vertices line");
      n = static_cast<std::size_t>(v);
    } else if (key == "edge") {
      long long u = -1, v = -1;
      if (!(ls >> u >> v) || u < 0 || v < 0) fail("expected two vertex indices");
      if (!n) fail("edge before vertices line");
      edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
    } else {
      fail("unknown keyword '" + key + "'");
    }
    std::string rest;
    if (ls >> rest && rest[0] != '#') fail("trailing tokens");
  }
  if (!n) throw std::runtime_error("graph file: missing vertices line");
  return build_graph(edges, *n);
}

inline Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
  return read_graph(in);
}

inline void write_graph(std::ostream& out, const Graph& g) {
  out << "vertices " << g.vertex_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << "edge " << u << ' ' << v << '\n';
}

}  // namespace monsterlab

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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "monsterlab/free_group.hpp"
#include "monsterlab/graph.hpp"
#include "monsterlab/hyperbolic.hpp"
#include "monsterlab/labeling.hpp"
#include "monsterlab/parallel.hpp"
#include "monsterlab/walks.hpp"

namespace monsterlab {

/// The measured speed is divided by 7 rather than 6 so that 6 * ell stays
/// strictly below it after Monte Carlo error.
inline constexpr double kDriftDivisor = 7.0;

struct DriftEstimate {
  double ell = 0;    // speed / kDriftDivisor
  double speed = 0;  // empirical mean of d_X(1, w_n) / n
  double std_error = 0;
  std::size_t n = 0;
  std::size_t trials = 0;
};

template <IsometricAction A>
DriftEstimate estimate_drift(const A& a, int k, std::size_t n, std::size_t trials, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("estimate_drift: n must be at least 1");
  if (trials < 1) throw std::invalid_argument("estimate_drift: trials must be positive");
  struct Moments {
    double sum = 0, sum_sq = 0;
  };
  const auto partial = map_trial_blocks<Moments>(trials, seed, [&](Rng& rng, std::size_t b, std::size_t e) {
    Moments m;
    for (std::size_t t = b; t < e; ++t) {
      const double s = displacement(a, srw_endpoint(n, k, rng)) / static_cast<double>(n);
      m.sum += s;
      m.sum_sq += s * s;
    }
    return m;
  });
  Moments total;
  for (const Moments& m : partial) {
    total.sum += m.sum;
    total.sum_sq += m.sum_sq;
  }
  const double count = static_cast<double>(trials);
  DriftEstimate out;
  out.n = n;
  out.trials = trials;
  out.speed = total.sum / count;
  const double var = std::max(0.0, total.sum_sq / count - out.speed * out.speed);
  out.std_error = std::sqrt(var / count);
  out.ell = out.speed / kDriftDivisor;
  return out;
}

inline DriftEstimate estimate_drift(const ActionOracle& o, int k, std::size_t n, std::size_t trials,
                                    std::uint64_t seed) {
  return std::visit([&](const auto& a) { return estimate_drift(a, k, n, trials, seed); }, o);
}

/// (1|w_{2n})_{w_n} computed directly and through the translated form
/// (w_n^{-1} | w_n^{-1} w_{2n})_1. In an isometric action both are equal.
struct GromovProductRoutes {
  double direct = 0;
  double translated = 0;
};

template <IsometricAction A>
GromovProductRoutes gromov_product_routes(const A& a, const Word& wn, const Word& w2n) {
  const Word wn_inv = inv(wn);
  return {gromov_product(a, a.apply(Word{}), a.apply(w2n), a.apply(wn)),
          gromov_product(a, a.apply(wn_inv), a.apply(mul(wn_inv, w2n)), a.apply(Word{}))};
}

struct GpDecayEstimate {
  EventEstimate estimate;
  std::size_t n = 0;
  double threshold = 0;             // ell * n / 3
  std::size_t route_mismatches = 0;  // samples where the two routes differ
};

/// Frequency of (1|w_{2n})_{w_n} >= ell n / 3, evaluated through the
/// translated form; the direct form is computed alongside as a cross-check.
template <IsometricAction A>
GpDecayEstimate estimate_gp_decay(const A& a, int k, double ell, std::size_t n, std::size_t trials,
                                  std::uint64_t seed) {
  if (!(ell > 0)) throw std::invalid_argument("estimate_gp_decay: ell must be positive");
  if (trials < 1) throw std::invalid_argument("estimate_gp_decay: trials must be positive");
  const double threshold = ell * static_cast<double>(n) / 3.0;
  struct Counts {
    std::size_t hits = 0, mismatches = 0;
  };
  const auto partial = map_trial_blocks<Counts>(trials, seed, [&](Rng& rng, std::size_t b, std::size_t e) {
    Counts c;
    for (std::size_t t = b; t < e; ++t) {
      const Word wn = srw_endpoint(n, k, rng);
      const Word w2n = mul(wn, srw_endpoint(n, k, rng));
      const auto routes = gromov_product_routes(a, wn, w2n);
      c.hits += routes.translated >= threshold ? 1 : 0;
      c.mismatches += routes.direct != routes.translated ? 1 : 0;
    }
    return c;
  });
  Counts total;
  for (const Counts& c : partial) {
    total.hits += c.hits;
    total.mismatches += c.mismatches;
  }
  return {make_estimate(total.hits, trials, "gp_ge " + std::to_string(threshold)), n, threshold,
          total.mismatches};
}

inline GpDecayEstimate estimate_gp_decay(const ActionOracle& o, int k, double ell, std::size_t n,
                                         std::size_t trials, std::uint64_t seed) {
  return std::visit([&](const auto& a) { return estimate_gp_decay(a, k, ell, n, trials, seed); }, o);
}

struct Parameters {
  std::size_t N = 0;
  std::size_t xi = 0;
  double lambda_min = 0;
  double C_prime = 0;
};

/// N = floor(C' ln|Omega|), xi = least integer > 8 C / (ell C'),
/// lambda_min = sqrt(1 - 1 / (2 xi)).
inline Parameters choose_parameters(double omega_size, double C, double ell, double c_prime) {
  if (!(ell > 0)) throw std::invalid_argument("choose_parameters: ell must be positive (elementary action)");
  if (!(c_prime > 0)) throw std::invalid_argument("choose_parameters: C' must be positive");
  if (!(omega_size >= 1)) throw std::invalid_argument("choose_parameters: |Omega| must be at least 1");
  Parameters p;
  p.C_prime = c_prime;
  // Relative slack absorbs rounding in log(exp(x)) so exact products floor correctly.
  const double n_real = c_prime * std::log(omega_size);
  p.N = static_cast<std::size_t>(std::floor(n_real * (1 + 1e-12) + 1e-12));
  const double bound = 8.0 * C / (ell * c_prime);
  if (!(bound < 1e15)) throw std::invalid_argument("choose_parameters: xi overflows");
  p.xi = static_cast<std::size_t>(std::floor(bound)) + 1;
  p.lambda_min = std::sqrt(1.0 - 1.0 / (2.0 * static_cast<double>(p.xi)));
  return p;
}

inline Parameters choose_parameters(const GraphCertificate& cert, double ell, double c_prime) {
  return choose_parameters(static_cast<double>(cert.vertex_count), cert.C, ell, c_prime);
}

/// 2 xi (1 - lambda^2 (1 - e^{-N/18})), clamped to [0, 1]. A value below 1
/// certifies that a witness path has positive probability under the comparison inequality.
inline double feasibility_bound(std::size_t xi, double lambda, std::size_t N) {
  if (!(lambda > 0 && lambda <= 1)) throw std::invalid_argument("feasibility_bound: lambda must lie in (0, 1]");
  if (xi < 1) throw std::invalid_argument("feasibility_bound: xi must be at least 1");
  const double tail = std::exp(-static_cast<double>(N) / 18.0);
  const double raw = 2.0 * static_cast<double>(xi) * (1.0 - lambda * lambda * (1.0 - tail));
  return std::clamp(raw, 0.0, 1.0);
}

// ---------------------------------------------------------------------------

/// Thrown when the candidate action does not factor through G_alpha.
class RelatorViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WitnessParams {
  std::size_t N = 0;
  std::size_t xi = 0;
  double ell = 0;
  // Replaces the default threshold j * diam(graph). Diagnostic use only: a
  // lower threshold turns near misses into recorded paths.
  std::optional<double> threshold_override;
};

struct Witness {
  std::size_t trial = 0;
  VertexId start = 0;
  std::vector<DartId> path;  // N * xi darts
  ChainStats chain;
  double threshold = 0;  // j * diam(graph)
};

struct WitnessSearchResult {
  std::optional<Witness> witness;
  std::size_t trials = 0;
  std::size_t condition_hits = 0;  // paths meeting every segment and junction condition
  double near_miss_frequency = 0;  // condition hits whose lower bound stayed below threshold
};

/// Samples stationary walks of length N xi and looks for one whose segments
/// satisfy delta_X(v_{Ni}, v_{N(i+1)}) >= ell N and junction products
/// <= ell N / 3 (with v_{-N} = v_0), and whose chained lower bound exceeds
/// j * diam(graph). Trials abandon at the first failing segment.
template <IsometricAction A>
WitnessSearchResult witness_search(const Graph& g, const Labeling& l, const A& a, const WitnessParams& params,
                                   std::size_t trials, std::uint64_t seed) {
  if (params.N * params.xi == 0) throw std::invalid_argument("witness_search: N * xi must be positive");
  if (!kills_relators(a, relators(g, l)))
    throw RelatorViolation(std::string("witness_search: the ") + A::kind +
                           " action does not kill the relators of G_alpha");
  const double threshold = params.threshold_override.value_or(static_cast<double>(l.j) *
                                                             static_cast<double>(diameter(g)));
  const double scale = params.ell * static_cast<double>(params.N);

  struct BlockResult {
    std::optional<Witness> first;
    std::size_t hits = 0;
    std::size_t above = 0;
  };
  const auto partial = map_trial_blocks<BlockResult>(trials, seed, [&](Rng& rng, std::size_t b, std::size_t e) {
    BlockResult out;
    std::vector<DartId> path;
    for (std::size_t t = b; t < e; ++t) {
      path.clear();
      const VertexId start = stationary_start(g, rng);
      VertexId v = start;
      ChainStats chain;
      chain.products.push_back(0.0);
      Word previous;
      bool ok = true;
      for (std::size_t i = 0; i < params.xi && ok; ++i) {
        Word segment;
        for (std::size_t s = 0; s < params.N; ++s) {
          const DartId d = uniform_out_dart(g, v, rng);
          path.push_back(d);
          segment.multiply_right(l.label(d));
          v = g.dart(d).target;
        }
        const double dist = displacement(a, segment);
        if (i > 0) {
          // Translate by the prefix: p_{i-1} -> previous^{-1} x0, p_{i+1} -> segment x0.
          const double product =
              0.5 * (chain.segment_dists.back() + dist - displacement(a, mul(previous, segment)));
          if (product > scale / 3.0) ok = false;
          chain.products.push_back(product);
        }
        if (dist < scale) ok = false;
        chain.segment_dists.push_back(dist);
        previous = std::move(segment);
      }
      if (!ok) continue;
      ++out.hits;
      chain.products.push_back(0.0);
      chain.lower_bound = chaining_lower_bound(chain.segment_dists, chain.products, a.delta());
      if (chain.lower_bound <= threshold) continue;
      ++out.above;
      if (!out.first) out.first = Witness{t, start, path, std::move(chain), threshold};
    }
    return out;
  });

  WitnessSearchResult result;
  result.trials = trials;
  std::size_t above = 0;
  for (const BlockResult& r : partial) {
    result.condition_hits += r.hits;
    above += r.above;
    if (r.first && !result.witness) result.witness = r.first;
  }
  result.near_miss_frequency =
      static_cast<double>(result.condition_hits - above) / static_cast<double>(trials);
  return result;
}

/// Recomputes a witness chain from its stored path using the orbit points
/// beta(v_0 .. v_{Ni}).x0 directly, independently of the segment shortcut.
template <IsometricAction A>
ChainStats recompute_witness_chain(const Graph& g, const Labeling& l, const A& a, const Witness& w,
                                   std::size_t N) {
  if (N == 0 || w.path.size() % N != 0) throw std::invalid_argument("witness path length is not a multiple of N");
  std::vector<typename A::point_type> points;
  const std::span<const DartId> path(w.path);
  for (std::size_t i = 0; i * N <= path.size(); ++i) points.push_back(a.apply(pushforward(g, l, path.first(i * N))));
  return chain_stats(a, std::span<const typename A::point_type>(points));
}

}  // namespace monsterlab

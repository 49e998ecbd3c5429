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
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "monsterlab/free_group.hpp"
#include "monsterlab/graph.hpp"
#include "monsterlab/labeling.hpp"
#include "monsterlab/parallel.hpp"
#include "monsterlab/rng.hpp"

namespace monsterlab {

/// Walk v_0..v_n with its darts and the depth of the lifted walk in the
/// universal cover after each step.
struct WalkTrace {
  std::vector<VertexId> vertices;
  std::vector<DartId> darts;
  std::vector<std::uint32_t> lifted_distance_profile;

  std::uint32_t lifted_distance() const {
    return lifted_distance_profile.empty() ? 0 : lifted_distance_profile.back();
  }
};

/// Vertex drawn with probability degree(v) / sum of degrees: the source of a
/// uniformly random dart.
inline VertexId stationary_start(const Graph& g, Rng& rng) {
  return g.dart(static_cast<DartId>(rng.below(g.dart_count()))).source;
}

inline VertexId stationary_start(const Graph& g, std::uint64_t seed) {
  Rng rng(seed);
  return stationary_start(g, rng);
}

inline DartId uniform_out_dart(const Graph& g, VertexId v, Rng& rng) {
  const auto out = g.out_darts(v);
  return out[rng.below(out.size())];
}

/// Non-backtracking reduction of a dart sequence: the stack pops when the next
/// dart reverses its top. Depth after each step is the lifted distance.
class LiftTracker {
 public:
  explicit LiftTracker(const Graph& g) : g_(g) {}
  void step(DartId e) {
    if (!stack_.empty() && g_.involution(stack_.back()) == e)
      stack_.pop_back();
    else
      stack_.push_back(e);
  }
  std::uint32_t depth() const { return static_cast<std::uint32_t>(stack_.size()); }

 private:
  const Graph& g_;
  std::vector<DartId> stack_;
};

inline WalkTrace sample_walk(const Graph& g, std::size_t n, Rng& rng) {
  WalkTrace t;
  t.vertices.reserve(n + 1);
  t.darts.reserve(n);
  t.lifted_distance_profile.reserve(n);
  t.vertices.push_back(stationary_start(g, rng));
  LiftTracker lift(g);
  for (std::size_t i = 0; i < n; ++i) {
    const DartId e = uniform_out_dart(g, t.vertices.back(), rng);
    lift.step(e);
    t.darts.push_back(e);
    t.vertices.push_back(g.dart(e).target);
    t.lifted_distance_profile.push_back(lift.depth());
  }
  return t;
}

inline WalkTrace sample_walk(const Graph& g, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_walk(g, n, rng);
}

/// One draw from mu^n: the pushforward of a fresh stationary walk.
inline Word sample_mu(const Graph& g, const Labeling& l, std::size_t n, Rng& rng) {
  VertexId v = stationary_start(g, rng);
  Word w;
  for (std::size_t i = 0; i < n; ++i) {
    const DartId e = uniform_out_dart(g, v, rng);
    w.multiply_right(l.label(e));
    v = g.dart(e).target;
  }
  return w;
}

/// Lifted distance of a fresh n-step stationary walk; its law is P^n.
inline std::uint32_t sample_lift_distance(const Graph& g, std::size_t n, Rng& rng) {
  VertexId v = stationary_start(g, rng);
  LiftTracker lift(g);
  for (std::size_t i = 0; i < n; ++i) {
    const DartId e = uniform_out_dart(g, v, rng);
    lift.step(e);
    v = g.dart(e).target;
  }
  return lift.depth();
}

/// One draw from the comparison measure: l ~ P^n, then w_{j l} of an
/// independent simple random walk on F_k.
inline Word sample_mu_bar(const Graph& g, std::size_t n, int j, int k, Rng& rng) {
  const std::uint32_t l = sample_lift_distance(g, n, rng);
  return srw_endpoint(static_cast<std::size_t>(j) * l, k, rng);
}

// ---------------------------------------------------------------------------
// Events on words, selectable by name: "len_ge t", "len_le t", "ball r".

struct Event {
  enum class Kind { len_ge, len_le, ball };
  Kind kind = Kind::len_ge;
  std::size_t param = 0;

  bool operator()(const Word& w) const {
    switch (kind) {
      case Kind::len_ge: return w.size() >= param;
      case Kind::len_le:
      case Kind::ball: return w.size() <= param;
    }
    return false;
  }

  std::string name() const {
    const char* base = kind == Kind::len_ge ? "len_ge" : kind == Kind::len_le ? "len_le" : "ball";
    return std::string(base) + " " + std::to_string(param);
  }
};

inline Event parse_event(const std::string& text) {
  std::istringstream in(text);
  std::string name;
  long long param = -1;
  in >> name;
  if (name != "len_ge" && name != "len_le" && name != "ball")
    throw std::invalid_argument("unknown event '" + name + "' (expected len_ge, len_le or ball)");
  if (!(in >> param) || param < 0)
    throw std::invalid_argument("event '" + name + "' needs a non-negative integer parameter");
  std::string rest;
  if (in >> rest) throw std::invalid_argument("event '" + text + "': trailing tokens");
  const Event::Kind kind =
      name == "len_ge" ? Event::Kind::len_ge : name == "len_le" ? Event::Kind::len_le : Event::Kind::ball;
  return {kind, static_cast<std::size_t>(param)};
}

/// Comma-separated list of events, e.g. "len_ge 1,len_ge 2,ball 3".
inline std::vector<Event> parse_events(const std::string& list) {
  std::vector<Event> out;
  std::istringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_event(item));
  if (out.empty()) throw std::invalid_argument("empty event list");
  return out;
}

struct EventEstimate {
  double probability = 0;
  std::size_t trials = 0;
  double std_error = 0;
  std::string event_name;
};

inline EventEstimate make_estimate(std::size_t hits, std::size_t trials, std::string name) {
  const double p = static_cast<double>(hits) / static_cast<double>(trials);
  return {p, trials, std::sqrt(p * (1 - p) / static_cast<double>(trials)), std::move(name)};
}

/// Monte Carlo frequencies of several events on the same draws. sampler(rng)
/// returns one Word; trials are split into substream blocks of `seed`.
template <class Sampler>
std::vector<EventEstimate> estimate_events(Sampler&& sampler, std::span<const Event> events,
                                           std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("estimate_event: trials must be positive");
  const auto partial = map_trial_blocks<std::vector<std::size_t>>(
      trials, seed, [&](Rng& rng, std::size_t begin, std::size_t end) {
        std::vector<std::size_t> hits(events.size(), 0);
        for (std::size_t t = begin; t < end; ++t) {
          const Word w = sampler(rng);
          for (std::size_t i = 0; i < events.size(); ++i) hits[i] += events[i](w) ? 1 : 0;
        }
        return hits;
      });
  std::vector<EventEstimate> out;
  for (std::size_t i = 0; i < events.size(); ++i) {
    std::size_t hits = 0;
    for (const auto& p : partial) hits += p[i];
    out.push_back(make_estimate(hits, trials, events[i].name()));
  }
  return out;
}

/// Same as estimate_events for an arbitrary predicate.
template <class Sampler, class Predicate>
EventEstimate estimate_event(Sampler&& sampler, Predicate&& event, std::size_t trials,
                             std::uint64_t seed, std::string name = "event") {
  if (trials < 1) throw std::invalid_argument("estimate_event: trials must be positive");
  const auto partial = map_trial_blocks<std::size_t>(
      trials, seed, [&](Rng& rng, std::size_t begin, std::size_t end) {
        std::size_t hits = 0;
        for (std::size_t t = begin; t < end; ++t) hits += event(sampler(rng)) ? 1 : 0;
        return hits;
      });
  std::size_t hits = 0;
  for (std::size_t h : partial) hits += h;
  return make_estimate(hits, trials, std::move(name));
}

struct ComparisonRow {
  std::string event;
  std::size_t n = 0;
  double mu_hat = 0;
  double mu_bar_hat = 0;
  double stderr_mu = 0;
  double stderr_mu_bar = 0;
  double margin = 0;  // mu_hat - lambda * mu_bar_hat
  bool pass = false;
};

/// Sigma buffer of the event-level comparison.
inline constexpr double kComparisonSigmas = 3.0;

/// Checks mu^n(A) >= lambda * mubar^n(A) - 3 sigma for each event A and each
/// n in 1..n_max. Rows are ordered by n, then by event.
inline std::vector<ComparisonRow> comparison_test(const Graph& g, const Labeling& l, double lambda,
                                                  std::span<const Event> events, std::size_t n_max,
                                                  std::size_t trials, std::uint64_t seed) {
  if (!(lambda > 0 && lambda < 1)) throw std::invalid_argument("comparison_test: lambda must lie in (0, 1)");
  std::vector<ComparisonRow> rows;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto mu = estimate_events([&](Rng& rng) { return sample_mu(g, l, n, rng); }, events, trials,
                                    substream_seed(seed, 2 * n));
    const auto bar = estimate_events([&](Rng& rng) { return sample_mu_bar(g, n, l.j, l.k, rng); },
                                     events, trials, substream_seed(seed, 2 * n + 1));
    for (std::size_t i = 0; i < events.size(); ++i) {
      ComparisonRow r{events[i].name(), n, mu[i].probability, bar[i].probability, mu[i].std_error,
                      bar[i].std_error, 0, false};
      r.margin = r.mu_hat - lambda * r.mu_bar_hat;
      const double combined = std::sqrt(r.stderr_mu * r.stderr_mu + lambda * lambda * r.stderr_mu_bar * r.stderr_mu_bar);
      r.pass = r.margin >= -kComparisonSigmas * combined;
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

inline bool all_pass(std::span<const ComparisonRow> rows) {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

}  // namespace monsterlab

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
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "monsterlab/rng.hpp"

namespace monsterlab {

/// Trials are processed in fixed-size blocks; block b always draws from
/// substream b of the master seed, so results do not depend on scheduling.
inline constexpr std::size_t kTrialBlock = 1024;

/// Worker count: MONSTERLAB_THREADS if set and positive, else hardware parallelism.
inline unsigned worker_count() {
  if (const char* env = std::getenv("MONSTERLAB_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Evaluates fn(i) for i in [0, count) on a worker pool and returns the
/// results in index order. The first exception thrown by any task is rethrown.
template <class Result, class Fn>
std::vector<Result> parallel_map(std::size_t count, Fn&& fn) {
  std::vector<Result> out(count);
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(worker_count(), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

/// Runs `trials` trials split into blocks of kTrialBlock. fn(rng, begin, end)
/// returns the partial result of one block; partials are returned in block order.
template <class Result, class Fn>
std::vector<Result> map_trial_blocks(std::size_t trials, std::uint64_t seed, Fn&& fn) {
  const std::size_t blocks = (trials + kTrialBlock - 1) / kTrialBlock;
  return parallel_map<Result>(blocks, [&](std::size_t b) {
    Rng rng = Rng::substream(seed, b);
    const std::size_t begin = b * kTrialBlock;
    const std::size_t end = std::min(trials, begin + kTrialBlock);
    return fn(rng, begin, end);
  });
}

}  // namespace monsterlab

// Copyright 2026 The Cyclebell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CYCLEBELL_PARALLEL_HPP
#define CYCLEBELL_PARALLEL_HPP

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace cyclebell {

/// Worker count: explicit argument, else CYCLEBELL_WORKERS, else hardware.
inline int resolve_workers(int requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CYCLEBELL_WORKERS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

/// Runs fn(begin, end) over contiguous chunks of [0, count) on `workers`
/// threads. Results must be merged by the caller in a value returned per
/// chunk index, so reductions stay order-independent.
inline void parallel_chunks(int64_t count, int workers,
                            const std::function<void(int64_t, int64_t)>& fn) {
  workers = resolve_workers(workers);
  if (count <= 0) return;
  if (workers <= 1) {
    fn(0, count);
    return;
  }
  int64_t chunk = std::max<int64_t>(1, (count + workers * 8 - 1) / (workers * 8));
  std::atomic<int64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  std::atomic<bool> failed{false};
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        int64_t begin = next.fetch_add(chunk);
        if (begin >= count || failed.load()) return;
        int64_t end = std::min(count, begin + chunk);
        try {
          fn(begin, end);
        } catch (...) {
          failed.store(true);
          throw;  // terminates; worker exceptions are programming errors here
        }
      }
    });
  for (auto& t : pool) t.join();
}

}  // namespace cyclebell

#endif

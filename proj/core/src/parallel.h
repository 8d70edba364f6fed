// Copyright 2026 The bwbounds Authors
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

#ifndef BWBOUNDS_SRC_PARALLEL_H_
#define BWBOUNDS_SRC_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace bwbounds::internal {

inline int ResolveWorkers(int requested, int items) {
  int w = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  return std::clamp(w, 1, std::max(items, 1));
}

// Runs fn(i) for i in [0, count) on up to `workers` threads. If several
// items throw, the exception of the smallest index is rethrown, so the
// outcome does not depend on scheduling.
template <typename Fn>
void ParallelFor(int count, int workers, Fn&& fn) {
  workers = ResolveWorkers(workers, count);
  std::vector<std::exception_ptr> errors(count);
  if (workers == 1) {
    for (int i = 0; i < count; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<int> next{0};
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace bwbounds::internal

#endif  // BWBOUNDS_SRC_PARALLEL_H_

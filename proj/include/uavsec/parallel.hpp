// Copyright 2026 The uavsec Authors
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

#pragma once

// Minimal fork-join loop. Work is handed out in fixed-size batches; callers
// write results into per-index slots so the outcome never depends on
// scheduling.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace uavsec {

// Called with (completed, total) after each finished batch.
using ProgressFn = std::function<void(std::size_t, std::size_t)>;

inline unsigned ResolveThreads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

template <typename Body>
void ParallelFor(std::size_t n, unsigned threads, std::size_t batch, Body&& body,
                 const ProgressFn& progress = {}) {
  batch = std::max<std::size_t>(1, batch);
  threads = std::min<unsigned>(ResolveThreads(threads),
                               static_cast<unsigned>((n + batch - 1) / batch));
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto worker = [&] {
    for (;;) {
      const std::size_t start = next.fetch_add(batch);
      if (start >= n) return;
      const std::size_t stop = std::min(n, start + batch);
      try {
        for (std::size_t i = start; i < stop; ++i) body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n);
        return;
      }
      const std::size_t finished = done.fetch_add(stop - start) + (stop - start);
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(finished, n);
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace uavsec

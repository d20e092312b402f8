// Copyright 2026 The smoothot Authors.
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

#ifndef SOT_PARALLEL_HPP_
#define SOT_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sot {

// Runs index-addressed tasks on a fixed number of threads. Callers write
// results into slot i, so the reduction order never depends on scheduling.
class WorkerPool {
 public:
  explicit WorkerPool(std::size_t threads = 1) : threads_(std::max<std::size_t>(1, threads)) {}

  std::size_t threads() const { return threads_; }

  // SOT_THREADS from the environment, else 1.
  static std::size_t DefaultThreads();

  template <typename Fn>
  void ForEach(std::size_t n, Fn&& fn) const {
    if (threads_ == 1 || n < 2) {
      for (std::size_t i = 0; i < n; ++i) fn(i);
      return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::size_t failed_at = n;
    std::exception_ptr failure;
    auto work = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (i < failed_at) {
            failed_at = i;
            failure = std::current_exception();
          }
        }
      }
    };
    std::vector<std::thread> pool;
    const std::size_t spawn = std::min(threads_, n) - 1;
    pool.reserve(spawn);
    for (std::size_t t = 0; t < spawn; ++t) pool.emplace_back(work);
    work();
    for (std::thread& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

 private:
  std::size_t threads_;
};

}  // namespace sot

#endif  // SOT_PARALLEL_HPP_

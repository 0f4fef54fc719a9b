// Copyright 2026 The tate-lab Authors
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

// Fork-join map over an indexed range. Results land in input order, so any
// reduction the caller performs afterwards is independent of worker count.

#ifndef TATELAB_PARALLEL_HPP_
#define TATELAB_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <type_traits>
#include <vector>

namespace tatelab {

/// Worker count used when the caller passes 0.
inline unsigned default_workers() {
  return std::max(1U, std::thread::hardware_concurrency());
}

template <typename T, typename Fn>
auto parallel_map(std::span<const T> items, unsigned workers, Fn&& fn)
    -> std::vector<std::invoke_result_t<Fn&, const T&>> {
  using R = std::invoke_result_t<Fn&, const T&>;
  std::vector<R> out(items.size());
  if (workers == 0) workers = default_workers();
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, std::max<std::size_t>(items.size(), 1)));

  if (workers <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i) out[i] = fn(items[i]);
    return out;
  }

  // Hand out indices from the top so the most expensive (largest prime)
  // items start first.
  std::atomic<std::size_t> remaining{items.size()};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (;;) {
      std::size_t left = remaining.fetch_sub(1, std::memory_order_relaxed);
      if (left == 0 || left > items.size()) return;
      const std::size_t i = left - 1;
      try {
        out[i] = fn(items[i]);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        remaining.store(0);
        return;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace tatelab

#endif  // TATELAB_PARALLEL_HPP_

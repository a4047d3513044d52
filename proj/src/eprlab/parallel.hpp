// Copyright 2026 The eprlab Authors.
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
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace eprlab {

// Events per work unit. Chunk boundaries do not depend on the worker count,
// so per-chunk partial results merged in chunk order are schedule-free.
inline constexpr std::uint64_t kChunkEvents = std::uint64_t{1} << 15;

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/*!
 * Evaluate `fn(begin, end)` over fixed chunks of [0, n) on `threads`
 * workers and return the per-chunk results in chunk order.
 *
 * If any chunk throws, the exception of the lowest failing chunk is
 * rethrown after all workers join.
 */
template <class Acc, class Fn>
std::vector<Acc> run_chunks(std::uint64_t n, unsigned threads, Fn&& fn) {
  const std::uint64_t chunks = (n + kChunkEvents - 1) / kChunkEvents;
  std::vector<Acc> results(chunks);
  std::vector<std::exception_ptr> errors(chunks);
  std::atomic<std::uint64_t> next{0};

  auto worker = [&] {
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      const std::uint64_t begin = c * kChunkEvents;
      const std::uint64_t end = std::min(n, begin + kChunkEvents);
      try {
        results[c] = fn(begin, end);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };

  const unsigned workers = static_cast<unsigned>(
      std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(chunks, 1)));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace eprlab

// Copyright 2026 The aversion authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace aversion::detail {

/// Runs fn(i) for i in [0, count) on up to hardware_concurrency threads.
/// Callers write results into slot i, so output order never depends on
/// scheduling. The first exception thrown by any task is rethrown.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(
      count, std::max(1U, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace aversion::detail

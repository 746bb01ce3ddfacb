// Copyright 2026 The pointbeam Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace pointbeam {

// Every parallel kernel takes an Exec so the serial loop stays available as
// the reference implementation for tests and benchmarks.
enum class Exec { serial, parallel };

template <class F>
void for_each_index(Exec exec, std::ptrdiff_t n, F&& f) {
  if (exec == Exec::serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::exception_ptr first;
  std::mutex guard;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      f(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(guard);
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
}

void set_thread_count(int jobs);

}  // namespace pointbeam

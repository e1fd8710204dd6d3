#pragma once

// Seeded trial runner. Trial i always receives derive_seed(master, i), and
// results come back in trial order, so anything reduced from them is
// independent of the thread count.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <thread>
#include <type_traits>
#include <vector>

#include "frogsim/rng.hpp"

namespace frogsim {

// Worker count: FROGSIM_THREADS if set and positive, else the hardware
// concurrency (at least 1).
unsigned default_thread_count();

template <class Task>
using TrialResult = std::invoke_result_t<Task&, std::uint64_t, std::size_t>;

// Runs task(seed_i, i) for i in [0, n). `task` must be safe to call
// concurrently and depend only on its arguments.
template <class Task>
std::vector<TrialResult<Task>> run_trials(Task&& task, std::size_t n,
                                          std::uint64_t master_seed,
                                          unsigned threads = 0) {
  using Result = TrialResult<Task>;
  std::vector<Result> results(n);
  if (threads == 0) threads = default_thread_count();
  threads = static_cast<unsigned>(std::max<std::size_t>(
      1, std::min<std::size_t>(threads, n / 64 + 1)));

  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      results[i] = task(derive_seed(master_seed, i), i);
    }
  };

  if (threads == 1) {
    run_range(0, n);
    return results;
  }

  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const std::size_t begin = std::min(n, w * chunk);
      const std::size_t end = std::min(n, begin + chunk);
      pool.emplace_back([&, w, begin, end] {
        try {
          run_range(begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace frogsim

#pragma once

#include <omp.h>

#include <algorithm>
#include <cstddef>
#include <exception>
#include <optional>
#include <vector>

namespace minsudoku {

// How to run a batch of independent work items. The serial path is the reference
// implementation; the OpenMP path must produce identical results for any worker count.
struct Exec {
  enum class Mode { serial, openmp };

  Mode mode = Mode::openmp;
  int workers = 0;  // 0 = OpenMP default

  static Exec serial() { return {Mode::serial, 1}; }
  static Exec openmp(int workers = 0) { return {Mode::openmp, workers}; }

  int threads() const { return workers > 0 ? workers : omp_get_max_threads(); }
};

// Computes work(i) for i in [0, count) and hands each result to sink(i, result) in
// increasing i, from one thread at a time. Items are scheduled dynamically.
template <class Result, class Work, class Sink>
void run_ordered(std::size_t count, const Exec& exec, Work&& work, Sink&& sink) {
  if (exec.mode == Exec::Mode::serial) {
    for (std::size_t i = 0; i < count; ++i) sink(i, work(i));
    return;
  }
  // Blocks bound the reorder buffer; results never wait across a block boundary.
  constexpr std::size_t kBlock = 1 << 14;
  std::vector<std::optional<Result>> ready(std::min(count, kBlock));
  std::exception_ptr failure;
  for (std::size_t base = 0; base < count && !failure; base += kBlock) {
    const std::size_t len = std::min(kBlock, count - base);
    std::size_t next = 0;
    const auto n = static_cast<long long>(len);
#pragma omp parallel for schedule(dynamic, 1) num_threads(exec.threads())
    for (long long j = 0; j < n; ++j) {
      std::optional<Result> result;
      try {
        result.emplace(work(base + static_cast<std::size_t>(j)));
      } catch (...) {
#pragma omp critical(minsudoku_run_ordered_sink)
        if (!failure) failure = std::current_exception();
      }
#pragma omp critical(minsudoku_run_ordered_sink)
      {
        if (result) ready[j] = std::move(result);
        while (!failure && next < len && ready[next]) {
          try {
            sink(base + next, *ready[next]);
          } catch (...) {
            failure = std::current_exception();
          }
          ready[next].reset();
          ++next;
        }
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace minsudoku

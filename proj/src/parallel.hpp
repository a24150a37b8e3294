#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace kstat::detail {

inline unsigned worker_count(bool parallel, unsigned requested) {
  if (!parallel) return 1;
  unsigned hw = requested ? requested : std::thread::hardware_concurrency();
  return std::max(1u, hw);
}

/// Splits [0, count) into contiguous chunks, runs fn(begin, end, acc) for each
/// on its own thread and returns the per-chunk accumulators in chunk order.
template <class Acc, class Fn>
std::vector<Acc> run_chunks(std::size_t count, unsigned workers, Fn fn) {
  workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), std::max<std::size_t>(count, 1)));
  std::vector<Acc> out(workers);
  if (workers == 1) {
    fn(std::size_t{0}, count, out[0]);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  const std::size_t step = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(count, w * step);
    const std::size_t end = std::min(count, begin + step);
    pool.emplace_back([&fn, &out, &errors, w, begin, end] {
      try {
        fn(begin, end, out[w]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace kstat::detail

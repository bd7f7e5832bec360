#pragma once

#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace parking {

inline int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs body(index, acc) for every index in [0, count), partitioned into
// contiguous blocks across workers. Worker accumulators are merged in
// worker order via Acc::merge. Accumulators must be grouping-invariant
// (integer tallies, or writes to disjoint per-index slots) so the result is
// identical for every thread count. If replicates throw, the exception of
// the lowest index is rethrown.
template <class Acc, class Body>
Acc parallel_tally(std::int64_t count, int threads, Body&& body) {
  const int workers = static_cast<int>(
      std::min<std::int64_t>(resolve_threads(threads), std::max<std::int64_t>(count, 1)));

  if (workers <= 1) {
    Acc acc;
    for (std::int64_t i = 0; i < count; ++i) body(i, acc);
    return acc;
  }

  std::vector<Acc> partial(static_cast<std::size_t>(workers));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::vector<std::int64_t> error_index(static_cast<std::size_t>(workers), -1);

  const std::int64_t block = (count + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const std::int64_t begin = static_cast<std::int64_t>(w) * block;
    const std::int64_t end = std::min(begin + block, count);
    pool.emplace_back([&, w, begin, end] {
      for (std::int64_t i = begin; i < end; ++i) {
        try {
          body(i, partial[static_cast<std::size_t>(w)]);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
          error_index[static_cast<std::size_t>(w)] = i;
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();

  int first_error = -1;
  for (int w = 0; w < workers; ++w) {
    if (!errors[static_cast<std::size_t>(w)]) continue;
    if (first_error < 0 ||
        error_index[static_cast<std::size_t>(w)] < error_index[static_cast<std::size_t>(first_error)])
      first_error = w;
  }
  if (first_error >= 0) std::rethrow_exception(errors[static_cast<std::size_t>(first_error)]);

  Acc acc = std::move(partial[0]);
  for (int w = 1; w < workers; ++w) acc.merge(partial[static_cast<std::size_t>(w)]);
  return acc;
}

}  // namespace parking

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace fva {

/// Applies fn to every item on a small worker pool. Results keep the input
/// order, so the output is independent of scheduling. The first exception
/// thrown by fn is rethrown after all workers stop.
template <class In, class Fn>
auto parallel_map(const std::vector<In>& items, Fn fn, unsigned threads = 0) {
  using Out = std::invoke_result_t<Fn, const In&>;
  std::vector<Out> out(items.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(items.size(), 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i; !failed && (i = next++) < items.size();) {
      try {
        out[i] = fn(items[i]);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace fva

#pragma once

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace edagepp {

// Worker count: EDAGE_THREADS when set to a positive integer, else
// `requested`, where <= 0 means the hardware concurrency. Always >= 1.
int resolve_workers(int requested);

// Runs fn(i) for i in [0, n) on `workers` threads, pulling indices from a
// shared counter, and hands results to sink(i, result) on the calling thread
// in index order. An exception thrown by fn is rethrown at its index.
template <typename T, typename Fn, typename Sink>
void ordered_parallel(std::size_t n, int workers, Fn&& fn, Sink&& sink) {
  if (n == 0) return;
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) sink(i, fn(i));
    return;
  }
  struct Slot {
    std::optional<T> value;
    std::exception_ptr error;
    bool done = false;
  };
  std::vector<Slot> slots(n);
  std::mutex mu;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};

  auto work = [&] {
    while (!stop.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      Slot s;
      try {
        s.value.emplace(fn(i));
      } catch (...) {
        s.error = std::current_exception();
      }
      s.done = true;
      {
        std::lock_guard lock(mu);
        slots[i] = std::move(s);
      }
      ready.notify_all();
    }
  };
  std::vector<std::thread> threads;
  const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
  for (std::size_t t = 0; t < count; ++t) threads.emplace_back(work);

  std::exception_ptr failure;
  for (std::size_t i = 0; i < n && !failure; ++i) {
    Slot s;
    {
      std::unique_lock lock(mu);
      ready.wait(lock, [&] { return slots[i].done; });
      s = std::move(slots[i]);
    }
    if (s.error) {
      failure = s.error;
      break;
    }
    try {
      sink(i, std::move(*s.value));
    } catch (...) {
      failure = std::current_exception();
    }
  }
  if (failure) stop.store(true);
  for (std::thread& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace edagepp

#include "albert/parallel.hpp"

#include <atomic>

namespace albert {

namespace {
std::atomic<std::size_t> g_workers{0};
}

std::size_t worker_count() {
  std::size_t n = g_workers.load();
  if (n == 0) {
    n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
  }
  return n;
}

void set_worker_count(std::size_t n) { g_workers.store(n); }

void parallel_chunks(std::size_t count,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  if (count == 0) return;
  std::size_t workers = worker_count();
  if (workers > count) workers = count;
  if (workers <= 1) {
    fn(0, count, 0);
    return;
  }
  const std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = begin + chunk < count ? begin + chunk : count;
    if (begin >= end) break;
    threads.emplace_back([&fn, begin, end, w]() { fn(begin, end, w); });
  }
  for (auto& t : threads) t.join();
}

} // namespace albert

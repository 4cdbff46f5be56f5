#include "hgfq/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hgfq {

namespace {
std::atomic<unsigned> g_workers{0};
}

unsigned worker_count() {
  unsigned w = g_workers.load();
  if (w != 0) return w;
  unsigned v = 1;
  if (const char* env = std::getenv("HGFQ_WORKERS")) {
    long parsed = std::strtol(env, nullptr, 10);
    if (parsed > 0 && parsed < 1024) v = static_cast<unsigned>(parsed);
  }
  g_workers.store(v);
  return v;
}

void set_worker_count(unsigned n) { g_workers.store(n == 0 ? 1 : n); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  unsigned w = worker_count();
  if (w <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < w && t < n; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (!err) err = std::current_exception();
          next.store(n);
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace hgfq

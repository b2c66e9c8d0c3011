#include "vdm/threading.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace vdm {

namespace {

int initial_threads() {
  if (const char* env = std::getenv("VDMKIT_THREADS")) {
    const int t = std::atoi(env);
    if (t >= 1) return t;
  }
  return 1;
}

std::atomic<int> g_max_threads{0};

} // namespace

int max_threads() {
  int t = g_max_threads.load(std::memory_order_relaxed);
  if (t == 0) {
    t = initial_threads();
    g_max_threads.store(t, std::memory_order_relaxed);
  }
  return t;
}

void set_max_threads(int threads) {
  g_max_threads.store(threads < 1 ? 1 : threads, std::memory_order_relaxed);
}

void parallel_for(int begin, int end, const std::function<void(int)>& fn) {
  const int count = end - begin;
  if (count <= 0) return;
  const int workers = std::min(max_threads(), count);
  if (workers <= 1) {
    for (int i = begin; i < end; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::atomic<int> next{begin};
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      constexpr int chunk = 16;
      try {
        while (true) {
          const int start = next.fetch_add(chunk);
          if (start >= end) break;
          const int stop = std::min(start + chunk, end);
          for (int i = start; i < stop; ++i) fn(i);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

} // namespace vdm

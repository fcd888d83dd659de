#include "fueter/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace fueter {

namespace {
std::atomic<int> g_limit{0};
// set on pool threads: nested loops run inline instead of spawning more
thread_local bool t_inside_pool = false;

int default_limit() {
  if (const char* env = std::getenv("FUETER_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return v;
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}
}  // namespace

void set_thread_limit(int threads) { g_limit = std::max(0, threads); }

int thread_limit() {
  const int v = g_limit.load();
  return v > 0 ? v : default_limit();
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(thread_limit()), count);
  if (workers <= 1 || t_inside_pool) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    const bool outer = t_inside_pool;
    t_inside_pool = true;
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
    t_inside_pool = outer;
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace fueter

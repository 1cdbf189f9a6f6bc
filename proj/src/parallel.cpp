#include "rmt/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace rmt {

int default_worker_count() {
  int hw = int(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("RMT_LAB_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap >= 1) return std::min(hw, cap);
    } catch (...) {
      // malformed value: fall through to hardware count
    }
  }
  return hw;
}

void parallel_trials(std::int64_t count, int workers,
                     const std::function<void(std::int64_t)>& body) {
  if (count <= 0) return;
  if (workers <= 0) workers = default_worker_count();
  workers = int(std::min<std::int64_t>(workers, count));

  if (workers == 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }

  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr first_error;
  std::mutex error_mutex;

  for (int w = 0; w < workers; ++w) {
    const std::int64_t begin = count * w / workers;
    const std::int64_t end = count * (w + 1) / workers;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::int64_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace rmt

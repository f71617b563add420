#include <adr/parallel.hpp>

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <adr/errors.hpp>

namespace adr {

int thread_budget() {
  const char* env = std::getenv("ADER_ADR_THREADS");
  long want = 0;  // 0 = auto
  if (env != nullptr && *env != '\0') {
    char* end = nullptr;
    want = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || want < 0)
      throw ConfigError(std::string("ADER_ADR_THREADS must be a non-negative integer, got '") +
                        env + "'");
  }
  if (want == 0) {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
  }
  return static_cast<int>(want);
}

void parallel_for(int n, const std::function<void(int)>& f) {
  if (n <= 0) return;
  const int workers = std::min(thread_budget(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex err_mutex;
  auto run = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace adr

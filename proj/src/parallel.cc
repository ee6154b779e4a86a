#include "mreak/parallel.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace mreak {

namespace {

std::atomic<int> g_override{0};

int env_threads() {
  const char* v = std::getenv("MREAK_THREADS");
  if (v == nullptr) return 0;
  try {
    std::size_t used = 0;
    const int n = std::stoi(v, &used);
    return used == std::string(v).size() && n > 0 ? n : 0;
  } catch (...) {
    return 0;
  }
}

}  // namespace

int max_threads() {
  if (const int n = g_override.load(); n > 0) return n;
  if (const int n = env_threads(); n > 0) return n;
  return std::max(1u, std::thread::hardware_concurrency());
}

void set_max_threads(int n) { g_override.store(std::max(n, 0)); }

ScopedThreadLimit::ScopedThreadLimit(int n) : previous_(g_override.load()) {
  set_max_threads(n);
}

ScopedThreadLimit::~ScopedThreadLimit() { g_override.store(previous_); }

void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& body) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(max_threads()), n);
  if (workers <= 1) {
    if (n > 0) body(0, n);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      if (begin >= end) break;
      threads.emplace_back([&body, &errors, w, begin, end] {
        try {
          body(begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace mreak

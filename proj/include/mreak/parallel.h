#ifndef MREAK_PARALLEL_H_
#define MREAK_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace mreak {

// Worker cap: set_max_threads() if called with n > 0, otherwise the
// MREAK_THREADS environment variable (positive integer), otherwise the
// hardware concurrency.
int max_threads();
void set_max_threads(int n);

// Restores the previous cap on destruction.
class ScopedThreadLimit {
 public:
  explicit ScopedThreadLimit(int n);
  ~ScopedThreadLimit();
  ScopedThreadLimit(const ScopedThreadLimit&) = delete;
  ScopedThreadLimit& operator=(const ScopedThreadLimit&) = delete;

 private:
  int previous_;
};

// Splits [0, n) into contiguous chunks, one per worker. `body(begin, end)`
// must only write state owned by its index range.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace mreak

#endif  // MREAK_PARALLEL_H_

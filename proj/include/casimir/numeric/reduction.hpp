#pragma once

#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

// Compensated and deterministic-parallel summation.  Large mode sums are
// partitioned into fixed index slices; each slice is accumulated with Kahan
// compensation and the slice results are combined in a pairwise tree whose
// shape depends only on the slice count.  For a given worker count the result
// is bitwise reproducible; across worker counts it agrees to rounding noise.

namespace casimir::numeric {

class KahanAccumulator {
 public:
  void add(double x) {
    double y = x - compensation_;
    double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// Pairwise reduction of partial sums; preserves a fixed tree shape so the
// result does not depend on evaluation order.
inline double pairwise_combine(std::vector<double> parts) {
  if (parts.empty()) return 0.0;
  while (parts.size() > 1) {
    std::size_t half = (parts.size() + 1) / 2;
    for (std::size_t i = 0; i + half < parts.size(); ++i) {
      parts[i] += parts[i + half];
    }
    parts.resize(half);
  }
  return parts[0];
}

// Worker count: CASIMIR_WORKERS overrides hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("CASIMIR_WORKERS")) {
    long n = std::strtol(env, nullptr, 10);
    if (n >= 1 && n <= 256) return static_cast<unsigned>(n);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Evaluates body(i) -> partial sum for i in [0, slices) on a fixed slice
// grid and combines the partials pairwise.  `body` must be pure.
inline double parallel_slice_sum(long long slices,
                                 const std::function<double(long long)>& body) {
  if (slices <= 0) return 0.0;
  unsigned workers = worker_count();
  std::vector<double> parts(static_cast<std::size_t>(slices), 0.0);
  if (workers <= 1 || slices == 1) {
    for (long long i = 0; i < slices; ++i) parts[static_cast<std::size_t>(i)] = body(i);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (long long i = w; i < slices; i += workers) {
          parts[static_cast<std::size_t>(i)] = body(i);
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  return pairwise_combine(std::move(parts));
}

}  // namespace casimir::numeric

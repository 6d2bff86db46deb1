/* Apache License, Version 2.0 */
#pragma once

#include <cstddef>
#include <cstdlib>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace gmink {

/// Number of worker threads: hardware default, capped by GMINK_THREADS.
inline int thread_budget() {
  static const int budget = [] {
#if defined(_OPENMP)
    int n = omp_get_max_threads();
#else
    int n = 1;
#endif
    if (const char* env = std::getenv("GMINK_THREADS")) {
      const int cap = std::atoi(env);
      if (cap >= 1 && cap < n) n = cap;
    }
    return n;
  }();
  return budget;
}

template <class F>
void parallel_for(std::ptrdiff_t begin, std::ptrdiff_t end, F&& f) {
#if defined(_OPENMP)
  const int nt = thread_budget();
  if (nt > 1 && end - begin > 1 && !omp_in_parallel()) {
#pragma omp parallel for schedule(static) num_threads(nt)
    for (std::ptrdiff_t i = begin; i < end; ++i) f(i);
    return;
  }
#endif
  for (std::ptrdiff_t i = begin; i < end; ++i) f(i);
}

/// Blocked sum of term(0..n-1). Partial sums are formed per fixed-size block
/// and accumulated in block order, so the result does not depend on the
/// thread count.
template <class F>
double parallel_sum(std::ptrdiff_t n, F&& term) {
  constexpr std::ptrdiff_t kBlock = 256;
  const std::ptrdiff_t blocks = (n + kBlock - 1) / kBlock;
  if (blocks <= 1) {
    double s = 0.0;
    for (std::ptrdiff_t i = 0; i < n; ++i) s += term(i);
    return s;
  }
  std::vector<double> partial(static_cast<std::size_t>(blocks), 0.0);
  parallel_for(0, blocks, [&](std::ptrdiff_t b) {
    const std::ptrdiff_t lo = b * kBlock;
    const std::ptrdiff_t hi = lo + kBlock < n ? lo + kBlock : n;
    double s = 0.0;
    for (std::ptrdiff_t i = lo; i < hi; ++i) s += term(i);
    partial[static_cast<std::size_t>(b)] = s;
  });
  double s = 0.0;
  for (double v : partial) s += v;
  return s;
}

namespace reference {

/// Serial reference for parallel_sum: plain left-to-right accumulation.
template <class F>
double serial_sum(std::ptrdiff_t n, F&& term) {
  double s = 0.0;
  for (std::ptrdiff_t i = 0; i < n; ++i) s += term(i);
  return s;
}

}  // namespace reference
}  // namespace gmink

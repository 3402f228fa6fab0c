#pragma once

#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace enflo {

// Deterministic parallel reduction: the index range is cut into fixed-size
// chunks, each chunk is summed serially, and the chunk partials are combined
// in chunk order. The result is therefore independent of the thread count,
// which keeps floating-point reports byte-reproducible. Exact (rational)
// sums would not need this, but they use the same shape for uniformity.
inline constexpr std::int64_t kReduceChunk = 4096;

template <class Acc, class Term>
Acc chunked_sum(std::int64_t n, Acc zero, Term&& term) {
  if (n <= 0) return zero;
  const std::int64_t chunks = (n + kReduceChunk - 1) / kReduceChunk;
  std::vector<Acc> partial(static_cast<std::size_t>(chunks), zero);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < chunks; ++c) {
    Acc s = zero;
    const std::int64_t lo = c * kReduceChunk;
    const std::int64_t hi = std::min(n, lo + kReduceChunk);
    for (std::int64_t i = lo; i < hi; ++i) s += term(i);
    partial[static_cast<std::size_t>(c)] = s;
  }
  Acc total = zero;
  for (const Acc& p : partial) total += p;
  return total;
}

inline int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace enflo

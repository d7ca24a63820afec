#pragma once

// Fan-out kernel for parameter sweeps and randomized audit batches.
// Trajectories are independent, so the OpenMP path assigns one result
// slot per index and matches the serial reference bit for bit; the
// serial path is kept for testing and as the baseline of the sweep
// benchmark.

#include <cstddef>
#include <vector>

namespace qcascade {

enum class Execution { serial, parallel };

template <typename Fn>
auto map_indexed(std::size_t count, Fn&& fn, Execution exec) {
  using Result = decltype(fn(std::size_t{0}));
  std::vector<Result> out(count);
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(count); ++i)
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
  }
  return out;
}

}  // namespace qcascade

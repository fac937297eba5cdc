#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#include <omp.h>

namespace omdlab {

/// Selects between the OpenMP kernel and its serial reference. Both paths
/// evaluate the same per-index work and reduce in index order, so results
/// are bit-identical.
enum class Execution { kSerial, kParallel };

/// Calls fn(i) for i in [0, n). Exceptions are captured per index and the one
/// with the lowest index is rethrown after the loop. max_threads > 0 caps the
/// team size.
template <class Fn>
void for_each_index(std::size_t n, Execution ex, Fn&& fn, int max_threads = 0) {
  if (ex == Execution::kSerial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long long>(n);
  const int threads = max_threads > 0 ? max_threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
  for (long long i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

/// out[i] = fn(i), evaluated with for_each_index.
template <class T, class Fn>
std::vector<T> map_indices(std::size_t n, Execution ex, Fn&& fn) {
  std::vector<T> out(n);
  for_each_index(n, ex, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace omdlab

#pragma once

// Per-point evaluation over a sample. The serial loop is the reference; the
// OpenMP loop must produce bit-identical output since each slot is computed
// independently and reductions happen afterwards, in index order.

#include <cstddef>
#include <exception>
#include <vector>

namespace cotlift {

enum class Execution { Serial, Parallel };

template <class F>
std::vector<double> map_points(std::size_t count, F&& f, Execution exec) {
  std::vector<double> out(count, 0.0);
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(count);
  const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

int max_threads();

}  // namespace cotlift

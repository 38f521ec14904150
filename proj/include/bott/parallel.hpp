#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <span>
#include <vector>

namespace bott {

// Worker count: BOTT_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
unsigned worker_count();

// Calls body(i) for every i in [0, n). Each index must only write state owned
// by that index. If any call throws, the exception from the lowest failing
// index is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Fixed-tree pairwise sum: the result depends only on the input order, never
// on the worker count.
template <typename T>
T pairwise_sum(std::span<const T> values) {
  if (values.empty()) return T{};
  if (values.size() <= 8) {
    T acc = values[0];
    for (std::size_t i = 1; i < values.size(); ++i) acc += values[i];
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

template <typename T>
T pairwise_sum(const std::vector<T>& values) {
  return pairwise_sum(std::span<const T>(values));
}

}  // namespace bott

#pragma once

// Sparse product kernels for series terms. The serial kernel is the
// reference; the OpenMP kernel splits the left operand across threads and
// merges the per-thread accumulators in thread order, so its output equals
// the serial output exactly.

#include <cobord/coeff.hpp>
#include <cobord/series.hpp>

#include <vector>

namespace cobord::kernels {

struct ProductSpec {
  const TheorySpec* theory = nullptr;
  CapArray caps = no_caps();
};

/// Unsorted, duplicate-free, zero-free product terms.
std::vector<SeriesTerm> multiply_serial(const std::vector<SeriesTerm>& a, const std::vector<SeriesTerm>& b,
                                        const ProductSpec& spec);
std::vector<SeriesTerm> multiply_parallel(const std::vector<SeriesTerm>& a, const std::vector<SeriesTerm>& b,
                                          const ProductSpec& spec);
/// Uses the parallel kernel for large products when more than one thread
/// is available.
std::vector<SeriesTerm> multiply(const std::vector<SeriesTerm>& a, const std::vector<SeriesTerm>& b,
                                 const ProductSpec& spec);

/// Products with |a|*|b| below this stay serial.
inline constexpr std::size_t kParallelThreshold = 1 << 14;

}  // namespace cobord::kernels

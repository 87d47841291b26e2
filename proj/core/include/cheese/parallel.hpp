#pragma once

#include <cstddef>
#include <functional>

namespace cheese {

/// Number of worker threads. Reads SWISSCHEESE_WORKERS; falls back to
/// hardware_concurrency, clamped to [1, 256].
int worker_count();

/// Runs fn(begin, end) over [0, n) split into fixed 4096-element chunks and
/// hands chunks to workers. Chunk boundaries do not depend on the worker
/// count, so per-chunk reductions combine in a fixed order regardless of
/// parallelism.
void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t chunk_index,
                                              std::size_t begin,
                                              std::size_t end)>& fn);

/// Chunk width used by parallel_chunks.
inline constexpr std::size_t kChunk = 4096;

/// Max over [0, n) of f(i), reduced chunk-by-chunk in index order.
double parallel_max(std::size_t n, const std::function<double(std::size_t)>& f);

} // namespace cheese

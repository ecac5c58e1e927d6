#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace pixelport {

/// Number of OpenMP threads kernels use when the caller passes threads = 0.
/// Honors PIXELPORT_THREADS as an upper bound on omp_get_max_threads().
int default_thread_count();

/// Resolves a caller-provided thread request (0 means default_thread_count()).
int resolve_threads(int requested);

using Stream = std::mt19937_64;

/// Independent random stream for (seed, stream_id). Results depend only on
/// these two numbers, never on which thread draws from the stream.
Stream make_stream(std::uint64_t seed, std::uint64_t stream_id);

/// Pairwise (cascade) summation. Order is fixed by the input length alone.
double pairwise_sum(std::span<const double> values);

}  // namespace pixelport

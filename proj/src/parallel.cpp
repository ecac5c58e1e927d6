#include "pixelport/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace pixelport {

int default_thread_count() {
  int n = omp_get_max_threads();
  if (const char* cap = std::getenv("PIXELPORT_THREADS")) {
    try {
      int parsed = std::stoi(cap);
      if (parsed >= 1 && parsed < n) n = parsed;
    } catch (const std::exception&) {
      // unparsable caps are ignored
    }
  }
  return n < 1 ? 1 : n;
}

int resolve_threads(int requested) {
  return requested > 0 ? requested : default_thread_count();
}

Stream make_stream(std::uint64_t seed, std::uint64_t stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32)};
  return Stream(seq);
}

double pairwise_sum(std::span<const double> values) {
  if (values.empty()) return 0.0;
  if (values.size() == 1) return values[0];
  std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace pixelport

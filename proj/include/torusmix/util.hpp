#pragma once

#include <cstdint>
#include <functional>
#include <random>

namespace torusmix {

// Number of workers used by parallel_for. Reads TORUSMIX_THREADS once;
// falls back to std::thread::hardware_concurrency().
int worker_count();

// Runs fn(i) for i in [begin, end) on the worker pool with dynamic
// scheduling. Nested calls (fn itself calling parallel_for) run serially,
// so inner loops do not oversubscribe the machine. Exceptions thrown by fn
// are rethrown on the calling thread.
void parallel_for(int begin, int end, const std::function<void(int)>& fn);

// Stateless mix of a seed and a stream tag; used to derive independent
// deterministic substreams from one user-facing seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag);

// Uniform double in [0,1) from the top 53 bits of the engine output.
// std::uniform_real_distribution is not pinned by the standard, and scenario
// construction must be bit-identical across platforms.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform double in [-1,1).
inline double uniform_sym(std::mt19937_64& rng) { return 2.0 * uniform01(rng) - 1.0; }

}  // namespace torusmix

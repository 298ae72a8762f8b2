#pragma once

#include <cstdint>
#include <functional>

namespace spaceform {

/// Thread budget: min(hardware, SPACEFORM_THREADS if set).
int max_threads();

/// Runs fn(i) for i in [0, n) on the thread budget.  Work is split into
/// contiguous index blocks; callers write into preallocated slots and
/// reduce serially afterwards, which keeps results deterministic.
void parallel_for(long n, const std::function<void(long)>& fn);

/// Deterministic splitmix64-based uniform sampler (independent of libstdc++
/// distribution internals, so fixed seeds give fixed reports everywhere).
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0,1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  long index(long n) { return static_cast<long>(next_u64() % static_cast<std::uint64_t>(n)); }
};

}  // namespace spaceform

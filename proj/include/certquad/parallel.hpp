#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace certquad {

/// Worker-thread cap from CERTQUAD_THREADS (0 or unset = hardware count).
int thread_cap();

/// Run fn(i) for i in [0, count). Chunks are distributed over at most
/// thread_cap() threads; callers must write results into per-index slots so
/// the outcome is independent of the schedule.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

/// Deterministic pairwise (tree) summation; independent of thread count.
double pairwise_sum(std::span<const double> values);

}  // namespace certquad

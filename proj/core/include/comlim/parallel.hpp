#pragma once

#include <cstddef>
#include <functional>

namespace comlim {

/// Number of workers used by parallel sweeps. Defaults to the hardware
/// concurrency, capped by the COMMITMENT_LIMITS_THREADS environment variable.
int worker_count();

/// Runs body(i) for i in [0, n). Results must be written to disjoint,
/// preallocated slots so the outcome is independent of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace comlim

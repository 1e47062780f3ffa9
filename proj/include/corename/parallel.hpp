#pragma once

namespace corename {

/// Threads used by the OpenMP kernels. Defaults to CORENAME_WORKERS when set,
/// otherwise the number of available cores.
int worker_count();
/// Overrides the worker count for the rest of the process (n >= 1).
void set_worker_count(int n);

}  // namespace corename

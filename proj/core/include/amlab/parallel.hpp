#pragma once

namespace amlab {

/// Number of worker threads used by pointwise loops and leaf reductions.
int thread_count();
/// Sets the worker count; n <= 0 restores the runtime default.
void set_thread_count(int n);

}  // namespace amlab

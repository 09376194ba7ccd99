#pragma once

namespace wreath::parallel {

// Number of OpenMP threads the kernels may use. Honors WREATH_THREADS when set
// to a positive integer, otherwise the OpenMP default.
int thread_count();

}  // namespace wreath::parallel

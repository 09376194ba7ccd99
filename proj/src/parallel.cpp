#include "wreath/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace wreath::parallel {

int thread_count() {
  int threads = omp_get_max_threads();
  if (const char* env = std::getenv("WREATH_THREADS")) {
    try {
      int cap = std::stoi(env);
      if (cap > 0 && cap < threads) threads = cap;
    } catch (const std::exception&) {
      // unparsable value: keep the OpenMP default
    }
  }
  return threads < 1 ? 1 : threads;
}

}  // namespace wreath::parallel

#include "uisim/execution.hpp"

#ifdef UISIM_HAVE_OPENMP
#include <omp.h>
#endif

namespace uisim {

bool parallel_available() {
#ifdef UISIM_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

void for_each_index(Execution policy, int n, const std::function<void(int)>& fn) {
  if (policy == Execution::Serial || n < 2 || !parallel_available()) {
    for (int k = 0; k < n; ++k) fn(k);
    return;
  }
  std::exception_ptr error;
  std::mutex lock;
#ifdef UISIM_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int k = 0; k < n; ++k) {
    try {
      fn(k);
    } catch (...) {
      std::lock_guard guard(lock);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace uisim

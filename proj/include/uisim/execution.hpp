#pragma once

#include <exception>
#include <functional>
#include <mutex>

namespace uisim {

/// Serial execution is the reference; parallel execution must reproduce it
/// exactly (each index writes only its own output slot).
enum class Execution { Serial, Parallel };

/// Calls fn(k) for k in [0, n). The first exception thrown by any call is
/// rethrown on the calling thread.
void for_each_index(Execution policy, int n, const std::function<void(int)>& fn);

bool parallel_available();

}  // namespace uisim

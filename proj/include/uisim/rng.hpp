#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace uisim {

/// Engine plus hand-rolled distributions. The standard library's
/// distributions are implementation-defined, so sampled scenarios would
/// differ between toolchains; these do not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  /// Standard normal by the Box-Muller transform.
  double normal();
  /// Normal(mean, std) restricted to [mean - bound, mean + bound] by rejection.
  double truncated_normal(double mean, double std, double bound);
  /// Index drawn with the given (normalized) probabilities.
  size_t categorical(std::span<const double> probabilities);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Stream seed for one run of a batch cell. `attempt` distinguishes retries
/// after a scenario-generation failure.
std::uint64_t derive_seed(std::uint64_t master, int arms, int vehicles, int run, int attempt = 0);

}  // namespace uisim

#include "uisim/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace uisim {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("empty range");
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1;
  do {
    u1 = uniform01();
  } while (u1 == 0.0);
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

double Rng::truncated_normal(double mean, double std, double bound) {
  for (;;) {
    const double z = std * normal();
    if (std::abs(z) <= bound) return mean + z;
  }
}

size_t Rng::categorical(std::span<const double> probabilities) {
  if (probabilities.empty()) throw std::invalid_argument("empty categorical distribution");
  const double u = uniform01();
  double acc = 0.0;
  for (size_t k = 0; k < probabilities.size(); ++k) {
    acc += probabilities[k];
    if (u < acc) return k;
  }
  return probabilities.size() - 1;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, int arms, int vehicles, int run, int attempt) {
  std::uint64_t h = splitmix64(master);
  for (std::uint64_t part : {static_cast<std::uint64_t>(arms), static_cast<std::uint64_t>(vehicles),
                             static_cast<std::uint64_t>(run), static_cast<std::uint64_t>(attempt)}) {
    h = splitmix64(h ^ part);
  }
  return h;
}

}  // namespace uisim

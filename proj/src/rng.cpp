#include "casepred/rng.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>

namespace casepred {

std::uint64_t RandomStream::next_below(std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

double RandomStream::next_normal() {
  // u1 in (0,1] so the log is finite.
  const double u1 = 1.0 - next_double();
  const double u2 = next_double();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t derive_pair_seed(std::uint64_t master_seed, std::string_view case_id, int k) {
  char buf[sizeof(master_seed) + sizeof(k)];
  std::memcpy(buf, &master_seed, sizeof(master_seed));
  std::memcpy(buf + sizeof(master_seed), &k, sizeof(k));
  std::uint64_t h = fnv1a64(std::string_view(buf, sizeof(buf)));
  return fnv1a64(case_id, h);
}

}  // namespace casepred

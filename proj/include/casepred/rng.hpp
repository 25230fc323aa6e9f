#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace casepred {

/// Deterministic pseudo-random stream. The same seed always produces the
/// same draw sequence, on any platform (doubles are derived from raw bits
/// rather than std::uniform_real_distribution).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1), 53 bits of precision.
  double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n). Uses rejection to stay unbiased.
  std::uint64_t next_below(std::uint64_t n);

  /// Standard normal draw (Box-Muller, one fresh pair per call).
  double next_normal();

 private:
  std::mt19937_64 engine_;
};

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 14695981039346656037ull);

/// Stable per-pair seed: hash of (master seed, case id, prefix length) so
/// generation results are independent of scheduling order.
std::uint64_t derive_pair_seed(std::uint64_t master_seed, std::string_view case_id, int k);

}  // namespace casepred

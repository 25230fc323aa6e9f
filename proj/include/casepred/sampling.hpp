#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "casepred/eventlog.hpp"
#include "casepred/predictor.hpp"
#include "casepred/rng.hpp"

namespace casepred {

enum class PolicyKind { Argmax, Random, TopK, Nucleus, Daemon };
enum class DaemonMode { Sample, Argmax };

/// Which next-activity selection rule to apply, with its parameter.
/// String syntax: `argmax`, `random`, `topk:<k>`, `nucleus:<p>`, `daemon`,
/// `daemon-argmax`.
struct SamplerPolicy {
  PolicyKind kind = PolicyKind::Argmax;
  int top_k = 1;               // TopK
  double nucleus_p = 1.0;      // Nucleus
  DaemonMode daemon_mode = DaemonMode::Sample;

  static SamplerPolicy parse(std::string_view text);  // throws std::invalid_argument
  std::string to_string() const;

  bool operator==(const SamplerPolicy&) const = default;
};

/// Per-generation occurrence counts, one slot per vocabulary index
/// (EOC included). Owned by a single generation run, never shared.
struct DaemonCounts {
  std::vector<std::int64_t> counts;

  static DaemonCounts from_prefix(std::span<const ActivityIndex> prefix,
                                  std::size_t vocab_size_with_eoc);
  void record(ActivityIndex selected) { counts[static_cast<std::size_t>(selected)] += 1; }
};

/// Index of the maximum probability; ties broken by lowest index.
ActivityIndex sample_argmax(const NextStepDistribution& dist);

/// Inverse-CDF draw over vocabulary order. Never returns a zero-probability
/// index.
ActivityIndex sample_categorical(const NextStepDistribution& dist, RandomStream& rng);

/// Keeps the k highest-probability indices (boundary ties resolved by lower
/// index), renormalizes over them, draws categorically. k above the
/// vocabulary size is clamped.
ActivityIndex sample_top_k(const NextStepDistribution& dist, int k, RandomStream& rng);

/// Keeps the shortest probability-descending prefix whose cumulative mass
/// reaches p, renormalizes, draws categorically.
ActivityIndex sample_nucleus(const NextStepDistribution& dist, double p, RandomStream& rng);

/// Exploration/exploitation weights: w(a) = P(a) / (count(a) + 1),
/// renormalized to sum to 1. The add-one keeps the reciprocal defined at
/// zero count and reduces the rule to the base distribution when all counts
/// are equal. Zero-probability activities keep zero weight.
std::vector<double> daemon_weights(const NextStepDistribution& dist, const DaemonCounts& counts);

/// Selects by daemon weight: Sample mode draws categorically, Argmax mode
/// takes the highest weight (ties by lower index). The caller is expected
/// to increment counts for the selected index after each step.
ActivityIndex sample_daemon(const NextStepDistribution& dist, const DaemonCounts& counts,
                            DaemonMode mode, RandomStream& rng);

/// Policy dispatcher used by the generation loop.
ActivityIndex select_next(const SamplerPolicy& policy, const NextStepDistribution& dist,
                          const DaemonCounts& counts, RandomStream& rng);

}  // namespace casepred

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "casepred/eventlog.hpp"

namespace casepred {

/// Probability vector over the activity vocabulary plus the end-of-case
/// symbol (index vocabulary.eoc_index()).
struct NextStepDistribution {
  std::vector<double> probs;

  bool is_valid(double eps = 1e-9) const;
};

/// Model-agnostic next-step contract: a probability distribution over the
/// next activity (EOC included) and a duration estimate for a chosen
/// non-EOC activity.
class Predictor {
 public:
  virtual ~Predictor() = default;

  virtual std::size_t vocab_size_with_eoc() const = 0;
  virtual ActivityIndex eoc_index() const = 0;
  virtual NextStepDistribution next_distribution(std::span<const ActivityIndex> prefix) const = 0;
  virtual double delta_seconds(std::span<const ActivityIndex> prefix,
                               ActivityIndex next_activity) const = 0;
};

/// Context slot used to left-pad contexts shorter than order-1.
inline constexpr ActivityIndex kBeginMarker = -1;

/// Count-based n-gram next-activity model with add-alpha smoothing.
///
/// Counts are kept for every context length 0..order-1 so that alpha = 0
/// can back off to the longest suffix context with observations (the empty
/// context is the global unigram and always has mass after training).
/// Step durations are aggregated as geometric means via log(1 + dt seconds),
/// conditioned on (full context, activity) with per-activity and global
/// fallbacks.
class NgramModel final : public Predictor {
 public:
  /// Accumulates transition and duration statistics over every trace.
  /// EOC is counted as the transition after the final event; the first
  /// event of a trace contributes no duration observation.
  static NgramModel train(const EventLog& log, int order, double alpha);

  std::size_t vocab_size_with_eoc() const override { return vocabulary_.size_with_eoc(); }
  ActivityIndex eoc_index() const override { return vocabulary_.eoc_index(); }
  NextStepDistribution next_distribution(std::span<const ActivityIndex> prefix) const override;
  double delta_seconds(std::span<const ActivityIndex> prefix,
                       ActivityIndex next_activity) const override;

  int order() const { return order_; }
  double alpha() const { return alpha_; }
  const Vocabulary& vocabulary() const { return vocabulary_; }

  /// Versioned single-file JSON encoding; save/load round-trips are exact
  /// and byte-stable.
  void save(std::ostream& out) const;
  static NgramModel load(std::istream& in);

 private:
  struct ContextCounts {
    std::vector<std::int64_t> counts;  // indexed by next activity, EOC included
    std::int64_t total = 0;
  };
  struct DurationStat {
    double sum_log = 0.0;  // sum of log(1 + dt)
    std::int64_t count = 0;
  };

  NgramModel() = default;

  static std::string encode_key(std::span<const ActivityIndex> tokens);
  static std::vector<ActivityIndex> decode_key(const std::string& key);
  std::vector<ActivityIndex> padded_context(std::span<const ActivityIndex> prefix) const;

  Vocabulary vocabulary_;
  int order_ = 1;
  double alpha_ = 0.0;
  // tables_[L]: contexts of length L -> next-activity counts.
  std::vector<std::unordered_map<std::string, ContextCounts>> tables_;
  // Keyed by full context plus chosen activity.
  std::unordered_map<std::string, DurationStat> context_durations_;
  std::vector<DurationStat> activity_durations_;
  DurationStat global_duration_;
};

}  // namespace casepred

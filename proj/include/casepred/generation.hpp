#pragma once

#include <span>
#include <vector>

#include "casepred/eventlog.hpp"
#include "casepred/predictor.hpp"
#include "casepred/rng.hpp"
#include "casepred/sampling.hpp"

namespace casepred {

/// Cap on the number of non-EOC activities generated per suffix; guards
/// against non-terminating selection loops.
struct GenerationLimits {
  int max_steps = 1;
};

/// Predicted case suffix: activities (EOC excluded) with their predicted
/// completion timestamps.
struct GeneratedSuffix {
  std::vector<ActivityIndex> activities;
  std::vector<TimePoint> end_times;
  bool terminated_by_eoc = false;
  // Policy selections made, including the terminal EOC selection when present.
  int steps_taken = 0;
};

/// Autoregressive suffix generation. Each step queries the predictor on
/// prefix ++ generated-so-far, selects via the policy (DaemonCounts start
/// from the prefix occurrences and are incremented after every selection,
/// EOC included), and advances the clock by the predictor's duration
/// estimate for the chosen activity.
GeneratedSuffix generate_suffix(const Predictor& model, const SamplerPolicy& policy,
                                std::span<const Event> prefix, const GenerationLimits& limits,
                                RandomStream& rng);

/// Completion time of the last suffix event minus the prefix end; 0 for an
/// empty suffix.
double remaining_time_seconds(const GeneratedSuffix& generated, TimePoint prefix_end_time);

/// Default cap: twice the longest trace seen in training.
GenerationLimits limits_for_training_log(const EventLog& train, int max_steps_factor = 2);

}  // namespace casepred

#include "casepred/generation.hpp"

#include <algorithm>
#include <stdexcept>

namespace casepred {

GeneratedSuffix generate_suffix(const Predictor& model, const SamplerPolicy& policy,
                                std::span<const Event> prefix, const GenerationLimits& limits,
                                RandomStream& rng) {
  if (prefix.empty()) throw std::invalid_argument("generation requires a non-empty prefix");
  if (limits.max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");

  std::vector<ActivityIndex> sequence;
  sequence.reserve(prefix.size() + static_cast<std::size_t>(limits.max_steps));
  for (const Event& ev : prefix) sequence.push_back(ev.activity);

  DaemonCounts counts = DaemonCounts::from_prefix(sequence, model.vocab_size_with_eoc());
  const ActivityIndex eoc = model.eoc_index();
  TimePoint clock = prefix.back().end_time;

  GeneratedSuffix out;
  while (true) {
    const NextStepDistribution dist = model.next_distribution(sequence);
    const ActivityIndex selected = select_next(policy, dist, counts, rng);
    counts.record(selected);
    out.steps_taken += 1;
    if (selected == eoc) {
      out.terminated_by_eoc = true;
      break;
    }
    clock = add_seconds(clock, model.delta_seconds(sequence, selected));
    sequence.push_back(selected);
    out.activities.push_back(selected);
    out.end_times.push_back(clock);
    if (static_cast<int>(out.activities.size()) >= limits.max_steps) {
      out.terminated_by_eoc = false;
      break;
    }
  }
  return out;
}

double remaining_time_seconds(const GeneratedSuffix& generated, TimePoint prefix_end_time) {
  if (generated.end_times.empty()) return 0.0;
  return seconds_between(prefix_end_time, generated.end_times.back());
}

GenerationLimits limits_for_training_log(const EventLog& train, int max_steps_factor) {
  const auto longest = static_cast<int>(train.max_trace_length());
  return GenerationLimits{std::max(1, max_steps_factor * longest)};
}

}  // namespace casepred

#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "casepred/eventlog.hpp"
#include "casepred/rng.hpp"

namespace casepred {

/// Lognormal step-duration law: dt = exp(mean_log + sigma_log * z) seconds.
struct DurationLaw {
  double mean_log = 8.0;
  double sigma_log = 0.0;
};

/// Rework loop: after emitting the activity at end_index, with probability
/// continue_prob the walk jumps back to start_index, at most max_iterations
/// times per case.
struct LoopSpec {
  int start_index = 0;
  int end_index = 0;
  double continue_prob = 0.0;  // in [0,1)
  int max_iterations = 0;
};

/// Exclusive choice: at `index`, with `probability` the alternative label is
/// emitted instead of the base activity.
struct BranchSpec {
  int index = 0;
  std::string alternative_label;
  double probability = 0.0;  // in [0,1]
};

/// Controlled synthetic process: a base activity path with an optional
/// rework loop and an optional branch, lognormal step durations, and evenly
/// spaced case start times.
struct SynthSpec {
  std::vector<std::string> activities;
  std::optional<LoopSpec> loop;
  std::optional<BranchSpec> branch;
  DurationLaw default_duration;
  std::map<std::string, DurationLaw> duration_overrides;
  int n_cases = 1;
  double case_spacing_seconds = 60.0;
  TimePoint start_time = 0;

  void validate() const;  // throws std::invalid_argument
};

/// Reads the key-value spec format (see README: `key = value`, `#` comments).
SynthSpec parse_synth_spec(std::istream& in);
SynthSpec load_synth_spec(const std::string& path);

/// The spec bundled with the CLI: six-activity path with a single-activity
/// rework loop (q = 0.7, at most 4 re-entries), 1000 cases.
SynthSpec default_synth_spec();

/// Walks the spec's process once per case. Deterministic given the stream's
/// seed. The first event of a case completes at the case start time; every
/// later event completes one duration draw after its predecessor.
EventLog generate_synthetic_log(const SynthSpec& spec, RandomStream& rng);

}  // namespace casepred

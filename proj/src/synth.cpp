#include "casepred/synth.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace casepred {

void SynthSpec::validate() const {
  if (activities.empty()) throw std::invalid_argument("synth spec: activities must be non-empty");
  if (n_cases < 1) throw std::invalid_argument("synth spec: cases must be >= 1");
  if (case_spacing_seconds < 0) {
    throw std::invalid_argument("synth spec: case_spacing_seconds must be >= 0");
  }
  const int n = static_cast<int>(activities.size());
  if (loop) {
    if (loop->start_index < 0 || loop->end_index >= n || loop->start_index > loop->end_index) {
      throw std::invalid_argument("synth spec: loop indices out of range");
    }
    if (!(loop->continue_prob >= 0.0 && loop->continue_prob < 1.0)) {
      throw std::invalid_argument("synth spec: loop.prob must be in [0,1)");
    }
    if (loop->max_iterations < 0) {
      throw std::invalid_argument("synth spec: loop.max_iterations must be >= 0");
    }
  }
  if (branch) {
    if (branch->index < 0 || branch->index >= n) {
      throw std::invalid_argument("synth spec: branch.index out of range");
    }
    if (!(branch->probability >= 0.0 && branch->probability <= 1.0)) {
      throw std::invalid_argument("synth spec: branch.prob must be in [0,1]");
    }
    if (branch->alternative_label.empty()) {
      throw std::invalid_argument("synth spec: branch.label must be non-empty");
    }
  }
  for (const auto& [label, law] : duration_overrides) {
    if (law.sigma_log < 0) throw std::invalid_argument("synth spec: sigma_log must be >= 0");
  }
  if (default_duration.sigma_log < 0) {
    throw std::invalid_argument("synth spec: sigma_log must be >= 0");
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) parts.push_back(trim(part));
  return parts;
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t consumed = 0;
    const double v = std::stod(value, &consumed);
    if (consumed != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("synth spec: bad number for '" + key + "': '" + value + "'");
  }
}

int to_int(const std::string& key, const std::string& value) {
  const double v = to_double(key, value);
  if (v != std::floor(v)) {
    throw std::invalid_argument("synth spec: '" + key + "' must be an integer");
  }
  return static_cast<int>(v);
}

DurationLaw to_law(const std::string& key, const std::string& value) {
  const auto parts = split(value, ',');
  if (parts.size() != 2) {
    throw std::invalid_argument("synth spec: '" + key + "' expects 'mean_log,sigma_log'");
  }
  return DurationLaw{to_double(key, parts[0]), to_double(key, parts[1])};
}

}  // namespace

SynthSpec parse_synth_spec(std::istream& in) {
  SynthSpec spec;
  LoopSpec loop;
  BranchSpec branch;
  bool has_loop = false, has_branch = false;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("synth spec line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "activities") {
      spec.activities = split(value, ',');
    } else if (key == "cases") {
      spec.n_cases = to_int(key, value);
    } else if (key == "case_spacing_seconds") {
      spec.case_spacing_seconds = to_double(key, value);
    } else if (key == "start_time") {
      auto ts = parse_timestamp(value);
      if (!ts) {
        throw std::invalid_argument("synth spec: unparseable start_time '" + value + "'");
      }
      spec.start_time = *ts;
    } else if (key == "loop.start") {
      loop.start_index = to_int(key, value);
      has_loop = true;
    } else if (key == "loop.end") {
      loop.end_index = to_int(key, value);
      has_loop = true;
    } else if (key == "loop.prob") {
      loop.continue_prob = to_double(key, value);
      has_loop = true;
    } else if (key == "loop.max_iterations") {
      loop.max_iterations = to_int(key, value);
      has_loop = true;
    } else if (key == "branch.index") {
      branch.index = to_int(key, value);
      has_branch = true;
    } else if (key == "branch.label") {
      branch.alternative_label = value;
      has_branch = true;
    } else if (key == "branch.prob") {
      branch.probability = to_double(key, value);
      has_branch = true;
    } else if (key == "duration.default") {
      spec.default_duration = to_law(key, value);
    } else if (key.starts_with("duration.")) {
      spec.duration_overrides[key.substr(9)] = to_law(key, value);
    } else {
      throw std::invalid_argument("synth spec: unknown key '" + key + "'");
    }
  }
  if (has_loop) spec.loop = loop;
  if (has_branch) spec.branch = branch;
  spec.validate();
  return spec;
}

SynthSpec load_synth_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open synth spec '" + path + "'");
  return parse_synth_spec(in);
}

SynthSpec default_synth_spec() {
  SynthSpec spec;
  // Each rework iteration performs two review steps before re-triage, so
  // review runs reach well past any small n-gram context.
  spec.activities = {"register", "triage", "review", "review", "triage", "resolve", "close"};
  spec.loop = LoopSpec{2, 3, 0.7, 4};
  spec.default_duration = DurationLaw{std::log(3600.0), 0.25};
  spec.n_cases = 1000;
  spec.case_spacing_seconds = 300.0;
  spec.start_time = *parse_timestamp("2023-01-02T08:00:00");
  return spec;
}

EventLog generate_synthetic_log(const SynthSpec& spec, RandomStream& rng) {
  spec.validate();
  EventLog log;
  log.traces.reserve(static_cast<std::size_t>(spec.n_cases));

  auto law_for = [&](const std::string& label) -> const DurationLaw& {
    auto it = spec.duration_overrides.find(label);
    return it == spec.duration_overrides.end() ? spec.default_duration : it->second;
  };

  char id_buf[24];
  for (int c = 0; c < spec.n_cases; ++c) {
    std::snprintf(id_buf, sizeof(id_buf), "c%06d", c);
    Trace trace;
    trace.case_id = id_buf;

    TimePoint clock =
        add_seconds(spec.start_time, spec.case_spacing_seconds * static_cast<double>(c));
    int pos = 0;
    int loop_iterations = 0;
    bool first = true;
    while (pos < static_cast<int>(spec.activities.size())) {
      std::string label = spec.activities[static_cast<std::size_t>(pos)];
      if (spec.branch && pos == spec.branch->index) {
        if (rng.next_double() < spec.branch->probability) label = spec.branch->alternative_label;
      }
      if (!first) {
        const DurationLaw& law = law_for(label);
        const double z = law.sigma_log > 0.0 ? rng.next_normal() : 0.0;
        clock = add_seconds(clock, std::exp(law.mean_log + law.sigma_log * z));
      }
      first = false;
      trace.events.push_back(Event{log.vocabulary.add_or_get(label), clock, ""});

      if (spec.loop && pos == spec.loop->end_index &&
          loop_iterations < spec.loop->max_iterations &&
          rng.next_double() < spec.loop->continue_prob) {
        ++loop_iterations;
        pos = spec.loop->start_index;
      } else {
        ++pos;
      }
    }
    log.traces.push_back(std::move(trace));
  }
  return log;
}

}  // namespace casepred

// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Run via `ctest -R acceptance` or directly from the build tree.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "casepred/generation.hpp"
#include "casepred/harness.hpp"
#include "casepred/metrics.hpp"
#include "casepred/predictor.hpp"
#include "casepred/sampling.hpp"
#include "casepred/synth.hpp"
#include "support/dl_oracle.hpp"

using namespace casepred;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool passed, double seconds,
            const std::string& detail = "") {
  std::cout << (passed ? "[PASS]" : "[FAIL]") << " C" << number << " " << name << " ("
            << static_cast<int>(seconds * 1000) << " ms)";
  if (!detail.empty()) std::cout << " — " << detail;
  std::cout << '\n';
  if (!passed) ++g_failures;
}

void criterion(int number, const std::string& name,
               const std::function<bool(std::string&)>& body) {
  const auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(number, name, ok, seconds, detail);
}

double l1(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

// --- C1: exhaustive edit-distance oracle ------------------------------------

bool c1_edit_distance_oracle(std::string& detail) {
  const auto seqs = testsupport::all_sequences(3, 6);
  for (const auto& a : seqs) {
    for (const auto& b : seqs) {
      if (dl_distance(a, b) != testsupport::dl_distance_oracle(a, b)) {
        detail = "mismatch found";
        return false;
      }
    }
  }
  detail = std::to_string(seqs.size() * seqs.size()) + " pairs";
  return true;
}

// --- C2: unit-cost swap similarity -------------------------------------------

bool c2_swap_example(std::string& detail) {
  const std::vector<ActivityIndex> s1 = {0, 1, 2};
  const std::vector<ActivityIndex> s2 = {0, 2, 1};
  const double value = sdl(s1, s2);
  detail = "sdl = " + std::to_string(value);
  return std::abs(value - 2.0 / 3.0) <= 1e-9;
}

// --- C3: metric ranges and edge conventions ----------------------------------

bool c3_metric_ranges(std::string& detail) {
  RandomStream rng(1234);
  auto random_sequence = [&](int max_len) {
    std::vector<ActivityIndex> s(rng.next_below(static_cast<std::uint64_t>(max_len) + 1));
    for (auto& a : s) a = static_cast<ActivityIndex>(rng.next_below(4));
    return s;
  };
  auto multiset_equal = [](const std::vector<ActivityIndex>& a,
                           const std::vector<ActivityIndex>& b) {
    auto sa = a, sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    return sa == sb;
  };

  for (int i = 0; i < 10000; ++i) {
    const auto a = random_sequence(8);
    const auto b = random_sequence(8);
    const double s = sdl(a, b);
    const double r = ras(a, b);
    if (!(s >= 0.0 && s <= 1.0 && r >= 0.0 && r <= 1.0)) {
      detail = "value out of [0,1]";
      return false;
    }
    if ((s == 1.0) != (a == b)) {
      detail = "SDL=1 must coincide with sequence equality";
      return false;
    }
    if ((r == 1.0) != multiset_equal(a, b)) {
      detail = "RAS=1 must coincide with count-multiset equality";
      return false;
    }
  }
  const std::vector<ActivityIndex> empty;
  if (sdl(empty, empty) != 1.0 || ras(empty, empty) != 1.0) {
    detail = "empty/empty conventions violated";
    return false;
  }
  detail = "10000 random pairs";
  return true;
}

// --- C4: sampler statistics ---------------------------------------------------

bool c4_sampler_statistics(std::string& detail) {
  const NextStepDistribution dist{{0.5, 0.25, 0.125, 0.125}};
  const int n = 100000;
  auto frequencies = [&](const std::function<ActivityIndex()>& draw) {
    std::vector<double> freq(4, 0.0);
    for (int i = 0; i < n; ++i) freq[static_cast<std::size_t>(draw())] += 1.0;
    for (auto& f : freq) f /= n;
    return freq;
  };

  RandomStream rng(42);
  double worst = 0.0;

  {
    const auto freq = frequencies([&] { return sample_categorical(dist, rng); });
    worst = std::max(worst, l1(freq, dist.probs));
  }
  {
    const std::vector<double> target = {2.0 / 3.0, 1.0 / 3.0, 0.0, 0.0};
    const auto freq = frequencies([&] { return sample_top_k(dist, 2, rng); });
    worst = std::max(worst, l1(freq, target));
    if (freq[2] != 0.0 || freq[3] != 0.0) {
      detail = "top-k emitted an out-of-support symbol";
      return false;
    }
  }
  {
    // Descending cumulative mass 0.5, 0.75 >= 0.7: nucleus {0,1}.
    const std::vector<double> target = {2.0 / 3.0, 1.0 / 3.0, 0.0, 0.0};
    const auto freq = frequencies([&] { return sample_nucleus(dist, 0.7, rng); });
    worst = std::max(worst, l1(freq, target));
    if (freq[2] != 0.0 || freq[3] != 0.0) {
      detail = "nucleus emitted an out-of-support symbol";
      return false;
    }
  }
  {
    DaemonCounts counts;
    counts.counts = {3, 0, 1, 2};
    const auto target = daemon_weights(dist, counts);
    const auto freq =
        frequencies([&] { return sample_daemon(dist, counts, DaemonMode::Sample, rng); });
    worst = std::max(worst, l1(freq, target));
  }

  detail = "worst L1 = " + std::to_string(worst);
  return worst < 0.01;
}

// --- C5: daemon weight invariants ----------------------------------------------

bool c5_daemon_invariants(std::string& detail) {
  RandomStream rng(777);
  for (int i = 0; i < 1000; ++i) {
    NextStepDistribution dist;
    dist.probs.resize(6);
    double sum = 0.0;
    for (auto& p : dist.probs) {
      p = rng.next_double() + 1e-3;
      sum += p;
    }
    for (auto& p : dist.probs) p /= sum;

    DaemonCounts counts;
    counts.counts.resize(6);
    for (auto& c : counts.counts) c = static_cast<std::int64_t>(rng.next_below(20));

    // Ranking invariance: argmax of normalized weights equals argmax of
    // P(a)/(count(a)+1).
    const auto weights = daemon_weights(dist, counts);
    std::size_t best_w = 0, best_raw = 0;
    for (std::size_t a = 1; a < 6; ++a) {
      if (weights[a] > weights[best_w]) best_w = a;
      const double raw_a = dist.probs[a] / static_cast<double>(counts.counts[a] + 1);
      const double raw_b = dist.probs[best_raw] / static_cast<double>(counts.counts[best_raw] + 1);
      if (raw_a > raw_b) best_raw = a;
    }
    if (best_w != best_raw) {
      detail = "ranking invariance violated";
      return false;
    }

    // Exploration monotonicity under repeated selection of one activity.
    const std::size_t chosen = rng.next_below(6);
    auto moving = counts;
    double previous = daemon_weights(dist, moving)[chosen];
    for (int step = 0; step < 3; ++step) {
      moving.record(static_cast<ActivityIndex>(chosen));
      const double now = daemon_weights(dist, moving)[chosen];
      if (!(now < previous)) {
        detail = "weight did not strictly decrease";
        return false;
      }
      previous = now;
    }
  }

  // Zero-count reduction, bit-exact on a dyadic distribution.
  const NextStepDistribution dyadic{{0.5, 0.25, 0.125, 0.125}};
  DaemonCounts zeros;
  zeros.counts = {0, 0, 0, 0};
  for (int i = 0; i < 2000; ++i) {
    RandomStream s1(9000 + i), s2(9000 + i);
    if (sample_daemon(dyadic, zeros, DaemonMode::Sample, s1) !=
        sample_categorical(dyadic, s2)) {
      detail = "zero-count daemon differs from the base sampler";
      return false;
    }
  }
  RandomStream unused(0);
  if (sample_daemon(dyadic, zeros, DaemonMode::Argmax, unused) != sample_argmax(dyadic)) {
    detail = "zero-count daemon-argmax differs from argmax";
    return false;
  }
  detail = "1000 instances";
  return true;
}

// --- C6: deterministic process sanity -------------------------------------------

bool c6_deterministic_process(std::string& detail) {
  SynthSpec spec;
  spec.activities = {"receive", "triage", "review", "approve", "notify", "close"};
  spec.default_duration = DurationLaw{std::log(1800.0), 0.0};
  spec.n_cases = 500;
  spec.case_spacing_seconds = 240.0;
  spec.start_time = *parse_timestamp("2023-04-03T08:00:00");

  RandomStream rng(42);
  const EventLog log = generate_synthetic_log(spec, rng);

  ExperimentConfig config;
  config.seed = 42;
  config.dataset_name = "synthetic-deterministic";
  const auto report = run_experiment(log, {SamplerPolicy::parse("argmax")}, config);
  const auto& eval = report.policies.front();
  detail = "mean SDL = " + std::to_string(eval.mean_sdl) +
           ", MAE(h) = " + std::to_string(eval.mae_hours);
  return std::abs(eval.mean_sdl - 1.0) <= 1e-9 && eval.mae_hours == 0.0;
}

// --- C7: directional reproduction on a loop-heavy log ----------------------------

bool c7_directional(std::string& detail) {
  SynthSpec spec = default_synth_spec();  // q = 0.7, max 4 re-entries, 1000 cases
  RandomStream rng(42);
  const EventLog log = generate_synthetic_log(spec, rng);

  ExperimentConfig config;
  config.seed = 42;
  config.dataset_name = "synthetic-loops";
  const std::vector<SamplerPolicy> policies = {SamplerPolicy::parse("argmax"),
                                               SamplerPolicy::parse("random"),
                                               SamplerPolicy::parse("daemon")};
  const auto report = run_experiment(log, policies, config);
  const auto& argmax = report.policies[0];
  const auto& random = report.policies[1];
  const auto& daemon = report.policies[2];

  const double daemon_profile_l1 =
      profile_l1(daemon.repetition, report.ground_truth_repetition);
  const double argmax_profile_l1 =
      profile_l1(argmax.repetition, report.ground_truth_repetition);

  std::ostringstream d;
  d << "order " << report.order << ", alpha " << report.alpha
    << "; RAS daemon/argmax/random = " << daemon.mean_ras << "/" << argmax.mean_ras << "/"
    << random.mean_ras << "; SDL daemon/random = " << daemon.mean_sdl << "/" << random.mean_sdl
    << "; profile L1 daemon/argmax = " << daemon_profile_l1 << "/" << argmax_profile_l1;
  detail = d.str();

  return daemon.mean_ras >= argmax.mean_ras && daemon.mean_ras >= random.mean_ras &&
         daemon.mean_sdl >= random.mean_sdl && daemon_profile_l1 < argmax_profile_l1;
}

// --- C8: protocol fidelity --------------------------------------------------------

bool c8_protocol(std::string& detail) {
  // Temporal split boundary on a synthetic log.
  SynthSpec spec;
  spec.activities = {"a", "b", "c"};
  spec.loop = LoopSpec{1, 1, 0.5, 3};
  spec.default_duration = DurationLaw{6.0, 0.3};
  spec.n_cases = 200;
  spec.case_spacing_seconds = 90.0;
  RandomStream rng(8);
  const EventLog log = generate_synthetic_log(spec, rng);
  const auto [train, test] = temporal_split(log, 0.8);
  TimePoint max_train = std::numeric_limits<TimePoint>::min();
  for (const auto& t : train.traces) max_train = std::max(max_train, t.start_time());
  for (const auto& t : test.traces) {
    if (max_train > t.start_time()) {
      detail = "temporal split boundary violated";
      return false;
    }
  }

  // Default random search budget and argmin contract.
  const auto result = random_search(train, SearchSpace{}, 42);  // default iteration budget
  if (result.candidates.size() != 50) {
    detail = "expected exactly 50 candidate evaluations, got " +
             std::to_string(result.candidates.size());
    return false;
  }
  for (const auto& candidate : result.candidates) {
    if (result.validation_mae_seconds > candidate.validation_mae_seconds) {
      detail = "random search did not return the argmin";
      return false;
    }
  }

  // Rank tie conventions.
  if (competition_ranks({0.80, 0.80, 0.75}, true) != std::vector<int>{1, 1, 3}) {
    detail = "tie convention {0.80,0.80,0.75} -> {1,1,3} violated";
    return false;
  }
  if (competition_ranks({0.4, 0.4, 0.4, 0.4, 0.4}, false) !=
      std::vector<int>{1, 1, 1, 1, 1}) {
    detail = "all-tied row must rank all 1";
    return false;
  }
  if (competition_ranks({0.9, 0.8, 0.7, 0.6}, true) != std::vector<int>{1, 2, 3, 4}) {
    detail = "strictly decreasing values must rank 1..n";
    return false;
  }
  detail = "split + 50-candidate search + tie fixtures";
  return true;
}

// --- C9: end-to-end CLI determinism -------------------------------------------------

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CASEPRED_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  return WEXITSTATUS(std::system(cmd.c_str()));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

bool c9_cli_determinism(std::string& detail) {
  const fs::path base =
      fs::temp_directory_path() / ("casepred-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(base);
  struct Cleanup {
    fs::path p;
    ~Cleanup() {
      std::error_code ec;
      fs::remove_all(p, ec);
    }
  } cleanup{base};

  const std::string flags = "compare --seed 42 --hpo-iters 10";
  if (run_cli(flags + " --workers 1 --out " + (base / "run1").string()) != 0 ||
      run_cli(flags + " --workers 1 --out " + (base / "run2").string()) != 0 ||
      run_cli(flags + " --workers 4 --out " + (base / "run4").string()) != 0) {
    detail = "compare invocation failed";
    return false;
  }
  const std::string r1 = slurp(base / "run1" / "report.csv");
  const std::string r2 = slurp(base / "run2" / "report.csv");
  const std::string r4 = slurp(base / "run4" / "report.csv");
  if (r1.empty()) {
    detail = "report.csv missing or empty";
    return false;
  }
  if (r1 != r2) {
    detail = "repeat invocation produced different bytes";
    return false;
  }
  if (r1 != r4) {
    detail = "worker count changed the report bytes";
    return false;
  }
  detail = std::to_string(r1.size()) + " identical bytes across 3 runs";
  return true;
}

}  // namespace

int main() {
  criterion(1, "edit-distance oracle (exhaustive, len <= 6, 3 symbols)", c1_edit_distance_oracle);
  criterion(2, "unit-cost swap similarity example", c2_swap_example);
  criterion(3, "metric range and edge conventions", c3_metric_ranges);
  criterion(4, "sampler statistics within L1 < 0.01", c4_sampler_statistics);
  criterion(5, "daemon weight invariants", c5_daemon_invariants);
  criterion(6, "deterministic-process pipeline sanity", c6_deterministic_process);
  criterion(7, "directional gains on a loop-heavy log", c7_directional);
  criterion(8, "protocol fidelity (split, search budget, rank ties)", c8_protocol);
  criterion(9, "CLI compare byte-identical across runs and workers", c9_cli_determinism);

  if (g_failures > 0) {
    std::cout << g_failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}

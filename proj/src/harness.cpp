#include "casepred/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

#include "casepred/csv.hpp"
#include "casepred/generation.hpp"
#include "casepred/rng.hpp"

namespace casepred {
namespace {

std::vector<ActivityIndex> activities_of(std::span<const Event> events) {
  std::vector<ActivityIndex> out;
  out.reserve(events.size());
  for (const Event& ev : events) out.push_back(ev.activity);
  return out;
}

std::vector<PrefixSuffixPair> collect_pairs(const EventLog& log) {
  std::vector<PrefixSuffixPair> pairs;
  for (const Trace& trace : log.traces) {
    auto trace_pairs = enumerate_prefix_pairs(trace);
    pairs.insert(pairs.end(), std::make_move_iterator(trace_pairs.begin()),
                 std::make_move_iterator(trace_pairs.end()));
  }
  return pairs;
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body) {
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
  };
  std::vector<std::thread> pool;
  const int count = std::min<int>(workers, static_cast<int>(n));
  pool.reserve(static_cast<std::size_t>(count));
  for (int t = 0; t < count; ++t) pool.emplace_back(run);
  for (auto& th : pool) th.join();
}

std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

RandomSearchResult random_search(const EventLog& train, const SearchSpace& space,
                                 std::uint64_t seed, int iterations, int max_steps_factor) {
  if (space.orders.empty() || space.alphas.empty()) {
    throw std::invalid_argument("search space must be non-empty");
  }
  if (iterations < 1) throw std::invalid_argument("random search needs >= 1 iteration");

  auto [fit, validation] = temporal_split(train, 0.8);
  const auto pairs = collect_pairs(validation);
  if (pairs.empty()) {
    throw std::runtime_error("validation split yields no prefix/suffix pairs");
  }
  const GenerationLimits limits = limits_for_training_log(fit, max_steps_factor);
  const SamplerPolicy argmax{PolicyKind::Argmax};

  RandomStream rng(seed);
  RandomSearchResult result;
  result.candidates.reserve(static_cast<std::size_t>(iterations));
  bool have_best = false;

  for (int it = 0; it < iterations; ++it) {
    const int order = space.orders[rng.next_below(space.orders.size())];
    const double alpha = space.alphas[rng.next_below(space.alphas.size())];
    const NgramModel model = NgramModel::train(fit, order, alpha);

    double abs_error_sum = 0.0;
    RandomStream unused(0);  // argmax decoding consumes no draws
    for (const auto& pair : pairs) {
      const GeneratedSuffix generated =
          generate_suffix(model, argmax, pair.prefix, limits, unused);
      const double actual =
          seconds_between(pair.prefix_end_time, pair.true_suffix.back().end_time);
      const double predicted = remaining_time_seconds(generated, pair.prefix_end_time);
      abs_error_sum += std::abs(actual - predicted);
    }
    const double mae_seconds = abs_error_sum / static_cast<double>(pairs.size());
    result.candidates.push_back(SearchCandidate{order, alpha, mae_seconds});
    if (!have_best || mae_seconds < result.validation_mae_seconds) {
      have_best = true;
      result.order = order;
      result.alpha = alpha;
      result.validation_mae_seconds = mae_seconds;
    }
  }
  return result;
}

EvaluationReport run_experiment(const EventLog& log, const std::vector<SamplerPolicy>& policies,
                                const ExperimentConfig& config) {
  if (policies.empty()) throw std::invalid_argument("no sampling policies given");
  const auto started = std::chrono::steady_clock::now();

  auto [train, test] = temporal_split(log, config.split_fraction);
  const RandomSearchResult search = random_search(
      train, config.space, config.seed, config.hpo_iterations, config.max_steps_factor);
  const NgramModel model = NgramModel::train(train, search.order, search.alpha);
  const GenerationLimits limits = limits_for_training_log(train, config.max_steps_factor);

  const auto pairs = collect_pairs(test);
  if (pairs.empty()) throw std::runtime_error("test split yields no prefix/suffix pairs");

  EvaluationReport report;
  report.dataset = config.dataset_name;
  report.order = search.order;
  report.alpha = search.alpha;
  report.seed = config.seed;
  report.validation_mae_hours = search.validation_mae_seconds / 3600.0;
  report.n_pairs = static_cast<int>(pairs.size());

  std::vector<std::vector<ActivityIndex>> true_suffix_acts;
  std::vector<double> actual_remaining;
  true_suffix_acts.reserve(pairs.size());
  actual_remaining.reserve(pairs.size());
  for (const auto& pair : pairs) {
    report.pair_manifest.emplace_back(pair.case_id, pair.k);
    true_suffix_acts.push_back(activities_of(pair.true_suffix));
    actual_remaining.push_back(
        seconds_between(pair.prefix_end_time, pair.true_suffix.back().end_time));
    accumulate_profile(report.ground_truth_repetition,
                       repetition_profile(true_suffix_acts.back()));
  }

  struct PairOutcome {
    double sdl = 0.0;
    double ras = 0.0;
    double abs_error_seconds = 0.0;
    RepetitionProfile profile;
  };

  for (const SamplerPolicy& policy : policies) {
    std::vector<PairOutcome> outcomes(pairs.size());
    parallel_for(pairs.size(), config.workers, [&](std::size_t i) {
      const auto& pair = pairs[i];
      RandomStream rng(derive_pair_seed(config.seed, pair.case_id, pair.k));
      const GeneratedSuffix generated =
          generate_suffix(model, policy, pair.prefix, limits, rng);
      PairOutcome& out = outcomes[i];
      out.sdl = sdl(true_suffix_acts[i], generated.activities);
      out.ras = ras(true_suffix_acts[i], generated.activities);
      out.abs_error_seconds = std::abs(
          actual_remaining[i] - remaining_time_seconds(generated, pair.prefix_end_time));
      out.profile = repetition_profile(generated.activities);
    });

    PolicyEvaluation eval;
    eval.policy = policy;
    eval.n_pairs = static_cast<int>(pairs.size());
    double sdl_sum = 0.0, ras_sum = 0.0, err_sum = 0.0;
    for (const PairOutcome& out : outcomes) {  // fixed order: identical for any worker count
      sdl_sum += out.sdl;
      ras_sum += out.ras;
      err_sum += out.abs_error_seconds;
      accumulate_profile(eval.repetition, out.profile);
    }
    const auto n = static_cast<double>(pairs.size());
    eval.mean_sdl = sdl_sum / n;
    eval.mean_ras = ras_sum / n;
    eval.mae_hours = err_sum / n / 3600.0;
    report.policies.push_back(std::move(eval));
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

void write_report_csv(std::ostream& out, const EvaluationReport& report) {
  const std::vector<std::string> header = {"dataset", "sampler",   "n_pairs",
                                           "mean_sdl", "mean_ras", "mae_hours",
                                           "order",   "alpha",    "seed"};
  write_csv_row(out, header);
  for (const PolicyEvaluation& eval : report.policies) {
    const std::vector<std::string> row = {
        report.dataset,
        eval.policy.to_string(),
        std::to_string(eval.n_pairs),
        format_fixed(eval.mean_sdl, 6),
        format_fixed(eval.mean_ras, 6),
        format_fixed(eval.mae_hours, 6),
        std::to_string(report.order),
        format_number(report.alpha),
        std::to_string(report.seed),
    };
    write_csv_row(out, row);
  }
}

std::vector<int> competition_ranks(const std::vector<double>& values, bool higher_is_better) {
  std::vector<std::int64_t> rounded(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    rounded[i] = std::llround(values[i] * 100.0);  // two decimal places
  }
  std::vector<int> ranks(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    int better = 0;
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (higher_is_better ? rounded[j] > rounded[i] : rounded[j] < rounded[i]) ++better;
    }
    ranks[i] = better + 1;
  }
  return ranks;
}

RankTable rank_table(const std::vector<std::pair<std::string, EvaluationReport>>& reports) {
  if (reports.empty()) throw std::invalid_argument("rank_table needs at least one report");

  RankTable table;
  for (const PolicyEvaluation& eval : reports.front().second.policies) {
    table.samplers.push_back(eval.policy.to_string());
  }
  for (const auto& [name, report] : reports) {
    std::vector<std::string> samplers;
    for (const PolicyEvaluation& eval : report.policies) {
      samplers.push_back(eval.policy.to_string());
    }
    if (samplers != table.samplers) {
      throw std::invalid_argument("rank_table: reports have mismatched policy sets");
    }
    table.datasets.push_back(name);
  }

  table.ranks.assign(3, {});
  for (const auto& [name, report] : reports) {
    std::vector<double> sdl_row, ras_row, mae_row;
    for (const PolicyEvaluation& eval : report.policies) {
      sdl_row.push_back(eval.mean_sdl);
      ras_row.push_back(eval.mean_ras);
      mae_row.push_back(eval.mae_hours);
    }
    table.ranks[0].push_back(competition_ranks(sdl_row, /*higher_is_better=*/true));
    table.ranks[1].push_back(competition_ranks(ras_row, /*higher_is_better=*/true));
    table.ranks[2].push_back(competition_ranks(mae_row, /*higher_is_better=*/false));
  }
  return table;
}

void write_rank_csv(std::ostream& out, const RankTable& table) {
  std::vector<std::string> header = {"dataset", "metric"};
  header.insert(header.end(), table.samplers.begin(), table.samplers.end());
  write_csv_row(out, header);
  for (std::size_t metric = 0; metric < 3; ++metric) {
    for (std::size_t d = 0; d < table.datasets.size(); ++d) {
      std::vector<std::string> row = {table.datasets[d], RankTable::kMetricNames[metric]};
      for (int rank : table.ranks[metric][d]) row.push_back(std::to_string(rank));
      write_csv_row(out, row);
    }
  }
}

namespace {

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

std::string format_rank_markdown(const RankTable& table) {
  std::ostringstream out;
  for (std::size_t metric = 0; metric < 3; ++metric) {
    std::size_t name_width = std::string("dataset").size();
    for (const auto& d : table.datasets) name_width = std::max(name_width, d.size());
    out << "### " << RankTable::kMetricNames[metric] << " ranks\n\n";
    out << "| " << pad("dataset", name_width);
    for (const auto& s : table.samplers) out << " | " << s;
    out << " |\n";
    out << "| " << std::string(name_width, '-');
    for (const auto& s : table.samplers) out << " | " << std::string(s.size(), '-');
    out << " |\n";
    for (std::size_t d = 0; d < table.datasets.size(); ++d) {
      out << "| " << pad(table.datasets[d], name_width);
      for (std::size_t p = 0; p < table.samplers.size(); ++p) {
        out << " | " << pad(std::to_string(table.ranks[metric][d][p]), table.samplers[p].size());
      }
      out << " |\n";
    }
    out << '\n';
  }
  return out.str();
}

std::string format_report_summary(const EvaluationReport& report) {
  std::ostringstream out;
  out << "dataset: " << report.dataset << "  pairs: " << report.n_pairs
      << "  order: " << report.order << "  alpha: " << format_number(report.alpha)
      << "  seed: " << report.seed << "\n\n";

  std::size_t name_width = std::string("sampler").size();
  for (const auto& eval : report.policies) {
    name_width = std::max(name_width, eval.policy.to_string().size());
  }
  out << pad("sampler", name_width) << "  mean_sdl  mean_ras  mae_hours\n";
  for (const auto& eval : report.policies) {
    out << pad(eval.policy.to_string(), name_width) << "  " << format_fixed(eval.mean_sdl, 6)
        << "  " << format_fixed(eval.mean_ras, 6) << "  " << format_fixed(eval.mae_hours, 6)
        << "\n";
  }
  return out.str();
}

}  // namespace casepred

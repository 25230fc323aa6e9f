#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "casepred/eventlog.hpp"
#include "casepred/metrics.hpp"
#include "casepred/predictor.hpp"
#include "casepred/sampling.hpp"

namespace casepred {

/// Candidate n-gram configurations for the random search.
struct SearchSpace {
  std::vector<int> orders = {2, 3, 4, 5};
  std::vector<double> alphas = {0.0, 0.1, 0.5, 1.0};
};

struct SearchCandidate {
  int order = 0;
  double alpha = 0.0;
  double validation_mae_seconds = 0.0;
};

struct RandomSearchResult {
  int order = 0;
  double alpha = 0.0;
  double validation_mae_seconds = 0.0;
  // Every evaluated candidate, in draw order (size == iterations).
  std::vector<SearchCandidate> candidates;
};

/// Uniform random search over the space: the training log is split 80/20
/// into fit and validation sets, each drawn (order, alpha) is trained on the
/// fit set, and remaining-time MAE on validation prefix pairs under Argmax
/// decoding picks the winner (ties keep the first seen).
RandomSearchResult random_search(const EventLog& train, const SearchSpace& space,
                                 std::uint64_t seed, int iterations = 50,
                                 int max_steps_factor = 2);

struct ExperimentConfig {
  double split_fraction = 0.8;
  int hpo_iterations = 50;
  std::uint64_t seed = 42;
  int workers = 1;
  int max_steps_factor = 2;
  SearchSpace space;
  std::string dataset_name = "dataset";
};

struct PolicyEvaluation {
  SamplerPolicy policy;
  int n_pairs = 0;
  double mean_sdl = 0.0;
  double mean_ras = 0.0;
  double mae_hours = 0.0;
  RepetitionProfile repetition;  // aggregate over generated suffixes
};

struct EvaluationReport {
  std::string dataset;
  int order = 0;
  double alpha = 0.0;
  std::uint64_t seed = 42;
  double validation_mae_hours = 0.0;
  int n_pairs = 0;
  std::vector<PolicyEvaluation> policies;
  RepetitionProfile ground_truth_repetition;
  // (case_id, k) of every scored pair; identical for every policy.
  std::vector<std::pair<std::string, int>> pair_manifest;
  double wall_seconds = 0.0;
};

/// Full protocol: temporal 80/20 split, random search on the training side,
/// retrain on the full training set with the winning configuration, then
/// score every policy on the identical test prefix-pair manifest. Per-pair
/// generation seeds derive from (seed, case_id, k), so reports are
/// byte-identical for any worker count.
EvaluationReport run_experiment(const EventLog& log, const std::vector<SamplerPolicy>& policies,
                                const ExperimentConfig& config);

/// Report CSV: dataset,sampler,n_pairs,mean_sdl,mean_ras,mae_hours,order,alpha,seed
void write_report_csv(std::ostream& out, const EvaluationReport& report);

/// Competition ranks over one row of metric values: values are rounded to
/// two decimals, equal rounded values share the lowest rank of their block,
/// and the next distinct value takes rank (number strictly better + 1).
std::vector<int> competition_ranks(const std::vector<double>& values, bool higher_is_better);

struct RankTable {
  std::vector<std::string> datasets;
  std::vector<std::string> samplers;
  // ranks[metric][dataset][sampler]; metrics ordered sdl, ras, mae.
  std::vector<std::vector<std::vector<int>>> ranks;

  static constexpr const char* kMetricNames[3] = {"sdl", "ras", "mae"};
};

/// Per-dataset, per-metric sampler ranking (SDL/RAS descending, MAE
/// ascending). Throws std::invalid_argument when reports disagree on the
/// policy set.
RankTable rank_table(const std::vector<std::pair<std::string, EvaluationReport>>& reports);

void write_rank_csv(std::ostream& out, const RankTable& table);
std::string format_rank_markdown(const RankTable& table);

/// Aligned human-readable per-policy metric summary for one report.
std::string format_report_summary(const EvaluationReport& report);

}  // namespace casepred

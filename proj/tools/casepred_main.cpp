#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "casepred/eventlog.hpp"
#include "casepred/generation.hpp"
#include "casepred/harness.hpp"
#include "casepred/predictor.hpp"
#include "casepred/sampling.hpp"
#include "casepred/synth.hpp"

namespace {

using namespace casepred;

struct CommonOptions {
  std::string log_path;
  std::uint64_t seed = 42;
  int workers = 1;
  ColumnMapping columns;
  std::string time_format = kIso8601Format;
  double split = 0.8;
  int hpo_iters = 50;
  int max_steps_factor = 2;
};

void add_input_options(CLI::App* cmd, CommonOptions& opts, bool log_required) {
  auto* log = cmd->add_option("--log", opts.log_path, "input event log CSV");
  if (log_required) log->required();
  cmd->add_option("--seed", opts.seed, "random seed (echoed into reports)");
  cmd->add_option("--case-col", opts.columns.case_col, "case id column name");
  cmd->add_option("--activity-col", opts.columns.activity_col, "activity column name");
  cmd->add_option("--time-col", opts.columns.time_col, "completion timestamp column name");
  cmd->add_option("--time-format", opts.time_format,
                  "timestamp format ('iso8601' or std::get_time pattern)");
}

void add_pipeline_options(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--workers", opts.workers, "generation worker threads")
      ->check(CLI::Range(1, 1000000));
  cmd->add_option("--split", opts.split, "train fraction for the temporal split")
      ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)));
  cmd->add_option("--hpo-iters", opts.hpo_iters, "random search iterations")
      ->check(CLI::Range(1, 1000000));
  cmd->add_option("--max-steps-factor", opts.max_steps_factor,
                  "generation cap as a multiple of the longest training trace")
      ->check(CLI::Range(1, 1000000));
}

EventLog read_log(const CommonOptions& opts) {
  std::ifstream in(opts.log_path);
  if (!in) throw std::runtime_error("cannot open log file '" + opts.log_path + "'");
  return parse_csv_log(in, opts.columns, opts.time_format);
}

// Without --log, experiments run on the bundled synthetic process.
EventLog load_or_synthesize(const CommonOptions& opts, std::string& dataset_name) {
  if (!opts.log_path.empty()) {
    dataset_name = std::filesystem::path(opts.log_path).stem().string();
    return read_log(opts);
  }
  dataset_name = "synthetic-default";
  RandomStream rng(opts.seed);
  return generate_synthetic_log(default_synth_spec(), rng);
}

std::vector<SamplerPolicy> parse_policies(const std::string& text) {
  std::vector<SamplerPolicy> policies;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (!token.empty()) policies.push_back(SamplerPolicy::parse(token));
  }
  if (policies.empty()) throw std::invalid_argument("no sampling policies given");
  return policies;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
}

int run_compare(const CommonOptions& opts, const std::string& policies_text,
                const std::string& out_dir) {
  const auto policies = parse_policies(policies_text);  // validate before any IO
  std::string dataset;
  const EventLog log = load_or_synthesize(opts, dataset);

  ExperimentConfig config;
  config.split_fraction = opts.split;
  config.hpo_iterations = opts.hpo_iters;
  config.seed = opts.seed;
  config.workers = opts.workers;
  config.max_steps_factor = opts.max_steps_factor;
  config.dataset_name = dataset;

  const EvaluationReport report = run_experiment(log, policies, config);

  std::filesystem::create_directories(out_dir);
  {
    std::ostringstream csv;
    write_report_csv(csv, report);
    write_file(std::filesystem::path(out_dir) / "report.csv", csv.str());
  }
  const RankTable table = rank_table({{report.dataset, report}});
  {
    std::ostringstream csv;
    write_rank_csv(csv, table);
    write_file(std::filesystem::path(out_dir) / "ranks.csv", csv.str());
  }
  write_file(std::filesystem::path(out_dir) / "ranks.md", format_rank_markdown(table));
  write_file(std::filesystem::path(out_dir) / "summary.md", format_report_summary(report));

  std::cout << format_report_summary(report) << '\n';
  for (std::size_t metric = 0; metric < 3; ++metric) {
    const auto& row = table.ranks[metric][0];
    for (std::size_t p = 0; p < row.size(); ++p) {
      if (row[p] == 1) {
        std::cout << "best " << RankTable::kMetricNames[metric] << ": " << table.samplers[p]
                  << '\n';
      }
    }
  }
  std::cerr << "completed in " << report.wall_seconds << " s, report in " << out_dir << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"case suffix prediction and sampling-policy evaluation"};
  app.require_subcommand(1);

  CommonOptions opts;

  // train
  auto* train_cmd = app.add_subcommand("train", "train an n-gram model and save it");
  int order = 3;
  double alpha = 0.1;
  std::string model_out;
  add_input_options(train_cmd, opts, /*log_required=*/true);
  train_cmd->add_option("--order", order, "n-gram order (context length + 1)")
      ->check(CLI::Range(1, 1000000));
  train_cmd->add_option("--alpha", alpha, "add-alpha smoothing")
      ->check(CLI::NonNegativeNumber);
  train_cmd->add_option("--out", model_out, "model output path")->required();

  // evaluate
  auto* eval_cmd = app.add_subcommand("evaluate", "run the protocol for a single policy");
  std::string policy_text = "daemon";
  std::string eval_out = ".";
  add_input_options(eval_cmd, opts, /*log_required=*/false);
  add_pipeline_options(eval_cmd, opts);
  eval_cmd->add_option("--policy", policy_text, "sampling policy to evaluate");
  eval_cmd->add_option("--out", eval_out, "output directory");

  // compare
  auto* compare_cmd = app.add_subcommand("compare", "evaluate and rank sampling policies");
  std::string policies_text = "argmax,random,topk:3,nucleus:0.9,daemon";
  std::string compare_out = ".";
  add_input_options(compare_cmd, opts, /*log_required=*/false);
  add_pipeline_options(compare_cmd, opts);
  compare_cmd->add_option("--policies", policies_text, "comma-separated policy list");
  compare_cmd->add_option("--out", compare_out, "output directory");

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic event log CSV");
  std::string spec_path;
  std::string synth_out;
  synth_cmd->add_option("--spec", spec_path, "synthetic process spec file");
  synth_cmd->add_option("--seed", opts.seed, "random seed");
  synth_cmd->add_option("--out", synth_out, "output CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (train_cmd->parsed()) {
      const EventLog log = read_log(opts);
      const NgramModel model = NgramModel::train(log, order, alpha);
      std::ostringstream buffer;
      model.save(buffer);
      write_file(model_out, buffer.str());
      std::cout << "vocabulary: " << model.vocabulary().size() << " activities\n"
                << "traces: " << log.traces.size() << '\n'
                << "max trace length: " << log.max_trace_length() << '\n';
      return 0;
    }
    if (eval_cmd->parsed()) {
      return run_compare(opts, policy_text, eval_out);
    }
    if (compare_cmd->parsed()) {
      return run_compare(opts, policies_text, compare_out);
    }
    if (synth_cmd->parsed()) {
      const SynthSpec spec = spec_path.empty() ? default_synth_spec() : load_synth_spec(spec_path);
      RandomStream rng(opts.seed);
      const EventLog log = generate_synthetic_log(spec, rng);
      std::ostringstream buffer;
      write_csv_log(buffer, log);
      write_file(synth_out, buffer.str());
      std::cerr << "wrote " << log.traces.size() << " traces (" << log.total_events()
                << " events) to " << synth_out << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

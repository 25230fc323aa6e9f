#include "casepred/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <istream>
#include <map>
#include <ostream>

#include <json.hpp>

namespace casepred {

bool NextStepDistribution::is_valid(double eps) const {
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) return false;
    sum += p;
  }
  return std::abs(sum - 1.0) <= eps;
}

std::string NgramModel::encode_key(std::span<const ActivityIndex> tokens) {
  std::string key(tokens.size() * sizeof(ActivityIndex), '\0');
  if (!tokens.empty()) std::memcpy(key.data(), tokens.data(), key.size());
  return key;
}

std::vector<ActivityIndex> NgramModel::decode_key(const std::string& key) {
  std::vector<ActivityIndex> tokens(key.size() / sizeof(ActivityIndex));
  if (!tokens.empty()) std::memcpy(tokens.data(), key.data(), key.size());
  return tokens;
}

std::vector<ActivityIndex> NgramModel::padded_context(
    std::span<const ActivityIndex> prefix) const {
  const std::size_t len = static_cast<std::size_t>(order_ - 1);
  std::vector<ActivityIndex> ctx(len, kBeginMarker);
  const std::size_t take = std::min(len, prefix.size());
  for (std::size_t i = 0; i < take; ++i) {
    ctx[len - take + i] = prefix[prefix.size() - take + i];
  }
  return ctx;
}

NgramModel NgramModel::train(const EventLog& log, int order, double alpha) {
  if (order < 1) throw std::invalid_argument("n-gram order must be >= 1");
  if (alpha < 0.0) throw std::invalid_argument("smoothing alpha must be >= 0");
  if (log.traces.empty()) throw std::invalid_argument("cannot train on an empty log");

  NgramModel model;
  model.vocabulary_ = log.vocabulary;
  model.order_ = order;
  model.alpha_ = alpha;
  model.tables_.resize(static_cast<std::size_t>(order));
  model.activity_durations_.assign(log.vocabulary.size(), DurationStat{});

  const std::size_t vocab = model.vocab_size_with_eoc();
  const ActivityIndex eoc = model.eoc_index();

  std::vector<ActivityIndex> window;  // full-length padded context, reused
  for (const auto& trace : log.traces) {
    const std::size_t len = trace.events.size();
    for (std::size_t pos = 0; pos <= len; ++pos) {
      const ActivityIndex next = pos < len ? trace.events[pos].activity : eoc;

      window.assign(static_cast<std::size_t>(order - 1), kBeginMarker);
      for (std::size_t i = 0; i < window.size(); ++i) {
        const std::size_t back = window.size() - i;
        if (pos >= back) window[i] = trace.events[pos - back].activity;
      }
      for (std::size_t ctx_len = 0; ctx_len < static_cast<std::size_t>(order); ++ctx_len) {
        std::span<const ActivityIndex> ctx(window.data() + window.size() - ctx_len, ctx_len);
        auto& entry = model.tables_[ctx_len][encode_key(ctx)];
        if (entry.counts.empty()) entry.counts.assign(vocab, 0);
        entry.counts[static_cast<std::size_t>(next)] += 1;
        entry.total += 1;
      }

      if (pos >= 1 && pos < len) {
        const double dt = seconds_between(trace.events[pos - 1].end_time,
                                          trace.events[pos].end_time);
        const double v = std::log1p(std::max(dt, 0.0));
        std::string key = encode_key(window);
        key.append(encode_key(std::span<const ActivityIndex>(&next, 1)));
        auto& stat = model.context_durations_[key];
        stat.sum_log += v;
        stat.count += 1;
        auto& act_stat = model.activity_durations_[static_cast<std::size_t>(next)];
        act_stat.sum_log += v;
        act_stat.count += 1;
        model.global_duration_.sum_log += v;
        model.global_duration_.count += 1;
      }
    }
  }
  return model;
}

NextStepDistribution NgramModel::next_distribution(
    std::span<const ActivityIndex> prefix) const {
  const std::size_t vocab = vocab_size_with_eoc();
  const std::vector<ActivityIndex> ctx = padded_context(prefix);
  NextStepDistribution dist;
  dist.probs.assign(vocab, 0.0);

  if (alpha_ > 0.0) {
    const ContextCounts* entry = nullptr;
    auto it = tables_[ctx.size()].find(encode_key(ctx));
    if (it != tables_[ctx.size()].end()) entry = &it->second;
    const double total = entry ? static_cast<double>(entry->total) : 0.0;
    const double denom = total + alpha_ * static_cast<double>(vocab);
    for (std::size_t a = 0; a < vocab; ++a) {
      const double c = entry ? static_cast<double>(entry->counts[a]) : 0.0;
      dist.probs[a] = (c + alpha_) / denom;
    }
    return dist;
  }

  // alpha == 0: back off to the longest suffix context with observations.
  for (std::size_t ctx_len = ctx.size() + 1; ctx_len-- > 0;) {
    std::span<const ActivityIndex> suffix(ctx.data() + ctx.size() - ctx_len, ctx_len);
    auto it = tables_[ctx_len].find(encode_key(suffix));
    if (it == tables_[ctx_len].end() || it->second.total == 0) continue;
    const double total = static_cast<double>(it->second.total);
    for (std::size_t a = 0; a < vocab; ++a) {
      dist.probs[a] = static_cast<double>(it->second.counts[a]) / total;
    }
    return dist;
  }
  throw std::logic_error("n-gram model has no observations");
}

double NgramModel::delta_seconds(std::span<const ActivityIndex> prefix,
                                 ActivityIndex next_activity) const {
  if (next_activity == eoc_index()) {
    throw std::invalid_argument("end-of-case has no duration");
  }
  const std::vector<ActivityIndex> ctx = padded_context(prefix);
  std::string key = encode_key(ctx);
  key.append(encode_key(std::span<const ActivityIndex>(&next_activity, 1)));

  const DurationStat* stat = nullptr;
  auto it = context_durations_.find(key);
  if (it != context_durations_.end() && it->second.count > 0) {
    stat = &it->second;
  } else if (activity_durations_[static_cast<std::size_t>(next_activity)].count > 0) {
    stat = &activity_durations_[static_cast<std::size_t>(next_activity)];
  } else {
    stat = &global_duration_;
  }
  if (stat->count == 0) return 0.0;
  const double mean_log = stat->sum_log / static_cast<double>(stat->count);
  return std::max(0.0, std::expm1(mean_log));
}

namespace {
constexpr const char* kFormatName = "casepred-ngram";
constexpr int kFormatVersion = 1;
}  // namespace

void NgramModel::save(std::ostream& out) const {
  nlohmann::ordered_json doc;
  doc["format"] = kFormatName;
  doc["version"] = kFormatVersion;
  doc["order"] = order_;
  doc["alpha"] = alpha_;
  doc["labels"] = vocabulary_.labels();

  // Sorted emission keeps the encoding byte-stable across runs.
  nlohmann::ordered_json transitions = nlohmann::ordered_json::array();
  for (std::size_t ctx_len = 0; ctx_len < tables_.size(); ++ctx_len) {
    std::map<std::string, const ContextCounts*> sorted;
    for (const auto& [key, entry] : tables_[ctx_len]) sorted.emplace(key, &entry);
    for (const auto& [key, entry] : sorted) {
      nlohmann::ordered_json item;
      item["ctx"] = decode_key(key);
      nlohmann::ordered_json counts = nlohmann::ordered_json::array();
      for (std::size_t a = 0; a < entry->counts.size(); ++a) {
        if (entry->counts[a] > 0) counts.push_back({a, entry->counts[a]});
      }
      item["counts"] = std::move(counts);
      transitions.push_back(std::move(item));
    }
  }
  doc["transitions"] = std::move(transitions);

  nlohmann::ordered_json durations = nlohmann::ordered_json::array();
  {
    std::map<std::string, const DurationStat*> sorted;
    for (const auto& [key, stat] : context_durations_) sorted.emplace(key, &stat);
    for (const auto& [key, stat] : sorted) {
      auto tokens = decode_key(key);
      const ActivityIndex act = tokens.back();
      tokens.pop_back();
      nlohmann::ordered_json item;
      item["ctx"] = tokens;
      item["act"] = act;
      item["sum_log"] = stat->sum_log;
      item["n"] = stat->count;
      durations.push_back(std::move(item));
    }
  }
  doc["durations"] = std::move(durations);

  nlohmann::ordered_json act_durs = nlohmann::ordered_json::array();
  for (const auto& stat : activity_durations_) act_durs.push_back({stat.sum_log, stat.count});
  doc["activity_durations"] = std::move(act_durs);
  doc["global_duration"] = {global_duration_.sum_log, global_duration_.count};

  out << doc.dump() << '\n';
}

NgramModel NgramModel::load(std::istream& in) {
  nlohmann::json doc = nlohmann::json::parse(in);
  if (doc.value("format", "") != kFormatName) {
    throw std::runtime_error("not a casepred n-gram model file");
  }
  if (doc.value("version", -1) != kFormatVersion) {
    throw std::runtime_error("unsupported model file version");
  }

  NgramModel model;
  model.order_ = doc.at("order").get<int>();
  model.alpha_ = doc.at("alpha").get<double>();
  for (const auto& label : doc.at("labels")) {
    model.vocabulary_.add_or_get(label.get<std::string>());
  }
  const std::size_t vocab = model.vocab_size_with_eoc();
  model.tables_.resize(static_cast<std::size_t>(model.order_));
  model.activity_durations_.assign(model.vocabulary_.size(), DurationStat{});

  for (const auto& item : doc.at("transitions")) {
    const auto ctx = item.at("ctx").get<std::vector<ActivityIndex>>();
    auto& entry = model.tables_.at(ctx.size())[encode_key(ctx)];
    entry.counts.assign(vocab, 0);
    for (const auto& pair : item.at("counts")) {
      const auto a = pair.at(0).get<std::size_t>();
      const auto c = pair.at(1).get<std::int64_t>();
      entry.counts.at(a) = c;
      entry.total += c;
    }
  }
  for (const auto& item : doc.at("durations")) {
    auto tokens = item.at("ctx").get<std::vector<ActivityIndex>>();
    const auto act = item.at("act").get<ActivityIndex>();
    tokens.push_back(act);
    auto& stat = model.context_durations_[encode_key(tokens)];
    stat.sum_log = item.at("sum_log").get<double>();
    stat.count = item.at("n").get<std::int64_t>();
  }
  const auto& act_durs = doc.at("activity_durations");
  for (std::size_t a = 0; a < act_durs.size() && a < model.activity_durations_.size(); ++a) {
    model.activity_durations_[a].sum_log = act_durs[a].at(0).get<double>();
    model.activity_durations_[a].count = act_durs[a].at(1).get<std::int64_t>();
  }
  model.global_duration_.sum_log = doc.at("global_duration").at(0).get<double>();
  model.global_duration_.count = doc.at("global_duration").at(1).get<std::int64_t>();
  return model;
}

}  // namespace casepred

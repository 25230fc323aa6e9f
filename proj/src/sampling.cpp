#include "casepred/sampling.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>

namespace casepred {

SamplerPolicy SamplerPolicy::parse(std::string_view text) {
  SamplerPolicy policy;
  if (text == "argmax") {
    policy.kind = PolicyKind::Argmax;
    return policy;
  }
  if (text == "random") {
    policy.kind = PolicyKind::Random;
    return policy;
  }
  if (text == "daemon") {
    policy.kind = PolicyKind::Daemon;
    policy.daemon_mode = DaemonMode::Sample;
    return policy;
  }
  if (text == "daemon-argmax") {
    policy.kind = PolicyKind::Daemon;
    policy.daemon_mode = DaemonMode::Argmax;
    return policy;
  }
  if (text.starts_with("topk:")) {
    const auto arg = text.substr(5);
    int k = 0;
    auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), k);
    if (ec != std::errc{} || ptr != arg.data() + arg.size() || k < 1) {
      throw std::invalid_argument("topk requires an integer k >= 1, got '" + std::string(text) + "'");
    }
    policy.kind = PolicyKind::TopK;
    policy.top_k = k;
    return policy;
  }
  if (text.starts_with("nucleus:")) {
    const auto arg = std::string(text.substr(8));
    std::size_t consumed = 0;
    double p = 0.0;
    try {
      p = std::stod(arg, &consumed);
    } catch (const std::exception&) {
      consumed = 0;
    }
    if (consumed != arg.size() || !(p > 0.0 && p <= 1.0)) {
      throw std::invalid_argument("nucleus requires p in (0,1], got '" + std::string(text) + "'");
    }
    policy.kind = PolicyKind::Nucleus;
    policy.nucleus_p = p;
    return policy;
  }
  throw std::invalid_argument("unknown sampling policy '" + std::string(text) + "'");
}

std::string SamplerPolicy::to_string() const {
  switch (kind) {
    case PolicyKind::Argmax:
      return "argmax";
    case PolicyKind::Random:
      return "random";
    case PolicyKind::TopK:
      return "topk:" + std::to_string(top_k);
    case PolicyKind::Nucleus: {
      std::string p = std::to_string(nucleus_p);
      while (p.size() > 1 && p.back() == '0') p.pop_back();
      if (!p.empty() && p.back() == '.') p.pop_back();
      return "nucleus:" + p;
    }
    case PolicyKind::Daemon:
      return daemon_mode == DaemonMode::Sample ? "daemon" : "daemon-argmax";
  }
  return "?";
}

DaemonCounts DaemonCounts::from_prefix(std::span<const ActivityIndex> prefix,
                                       std::size_t vocab_size_with_eoc) {
  DaemonCounts dc;
  dc.counts.assign(vocab_size_with_eoc, 0);
  for (ActivityIndex a : prefix) dc.counts[static_cast<std::size_t>(a)] += 1;
  return dc;
}

namespace {

ActivityIndex argmax_index(std::span<const double> weights) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < weights.size(); ++i) {
    if (weights[i] > weights[best]) best = i;
  }
  return static_cast<ActivityIndex>(best);
}

ActivityIndex categorical_index(std::span<const double> weights, RandomStream& rng) {
  const double u = rng.next_double();
  double cum = 0.0;
  ActivityIndex last_positive = -1;
  for (std::size_t a = 0; a < weights.size(); ++a) {
    const double w = weights[a];
    if (w <= 0.0) continue;
    cum += w;
    last_positive = static_cast<ActivityIndex>(a);
    if (u < cum) return last_positive;
  }
  if (last_positive < 0) throw std::invalid_argument("distribution has no positive mass");
  return last_positive;  // u fell into the floating-point shortfall at the top
}

// Indices ordered by probability descending, ties by lower index.
std::vector<std::size_t> descending_order(const std::vector<double>& probs) {
  std::vector<std::size_t> order(probs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (probs[a] != probs[b]) return probs[a] > probs[b];
    return a < b;
  });
  return order;
}

}  // namespace

ActivityIndex sample_argmax(const NextStepDistribution& dist) {
  return argmax_index(dist.probs);
}

ActivityIndex sample_categorical(const NextStepDistribution& dist, RandomStream& rng) {
  return categorical_index(dist.probs, rng);
}

ActivityIndex sample_top_k(const NextStepDistribution& dist, int k, RandomStream& rng) {
  if (k < 1) throw std::invalid_argument("top-k requires k >= 1");
  const auto order = descending_order(dist.probs);
  const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(k), order.size());

  std::vector<double> truncated(dist.probs.size(), 0.0);
  double mass = 0.0;
  for (std::size_t i = 0; i < keep; ++i) mass += dist.probs[order[i]];
  if (mass <= 0.0) throw std::invalid_argument("distribution has no positive mass");
  for (std::size_t i = 0; i < keep; ++i) truncated[order[i]] = dist.probs[order[i]] / mass;
  return categorical_index(truncated, rng);
}

ActivityIndex sample_nucleus(const NextStepDistribution& dist, double p, RandomStream& rng) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("nucleus requires p in (0,1]");
  const auto order = descending_order(dist.probs);

  std::vector<double> truncated(dist.probs.size(), 0.0);
  double mass = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const double prob = dist.probs[order[i]];
    if (prob <= 0.0) break;  // nucleus never extends into zero-probability tail
    truncated[order[i]] = prob;
    mass += prob;
    if (mass >= p) break;
  }
  if (mass <= 0.0) throw std::invalid_argument("distribution has no positive mass");
  for (double& w : truncated) w /= mass;
  return categorical_index(truncated, rng);
}

std::vector<double> daemon_weights(const NextStepDistribution& dist, const DaemonCounts& counts) {
  std::vector<double> weights(dist.probs.size(), 0.0);
  double sum = 0.0;
  for (std::size_t a = 0; a < weights.size(); ++a) {
    const double effective_count = static_cast<double>(counts.counts[a] + 1);
    weights[a] = dist.probs[a] / effective_count;
    sum += weights[a];
  }
  if (sum <= 0.0) throw std::invalid_argument("distribution has no positive mass");
  for (double& w : weights) w /= sum;
  return weights;
}

ActivityIndex sample_daemon(const NextStepDistribution& dist, const DaemonCounts& counts,
                            DaemonMode mode, RandomStream& rng) {
  const auto weights = daemon_weights(dist, counts);
  if (mode == DaemonMode::Argmax) return argmax_index(weights);
  return categorical_index(weights, rng);
}

ActivityIndex select_next(const SamplerPolicy& policy, const NextStepDistribution& dist,
                          const DaemonCounts& counts, RandomStream& rng) {
  switch (policy.kind) {
    case PolicyKind::Argmax:
      return sample_argmax(dist);
    case PolicyKind::Random:
      return sample_categorical(dist, rng);
    case PolicyKind::TopK:
      return sample_top_k(dist, policy.top_k, rng);
    case PolicyKind::Nucleus:
      return sample_nucleus(dist, policy.nucleus_p, rng);
    case PolicyKind::Daemon:
      return sample_daemon(dist, counts, policy.daemon_mode, rng);
  }
  throw std::logic_error("unhandled policy kind");
}

}  // namespace casepred

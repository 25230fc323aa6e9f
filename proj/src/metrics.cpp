#include "casepred/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace casepred {

int dl_distance(std::span<const ActivityIndex> s1, std::span<const ActivityIndex> s2) {
  const std::size_t n = s1.size();
  const std::size_t m = s2.size();
  if (n == 0) return static_cast<int>(m);
  if (m == 0) return static_cast<int>(n);

  const std::size_t width = m + 1;
  std::vector<int> d((n + 1) * width);
  auto at = [&](std::size_t i, std::size_t j) -> int& { return d[i * width + j]; };

  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = static_cast<int>(i);
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = static_cast<int>(j);

  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const int sub_cost = s1[i - 1] == s2[j - 1] ? 0 : 1;
      int best = std::min({at(i - 1, j) + 1,            // deletion
                           at(i, j - 1) + 1,            // insertion
                           at(i - 1, j - 1) + sub_cost  // substitution / match
      });
      if (i > 1 && j > 1 && s1[i - 1] == s2[j - 2] && s1[i - 2] == s2[j - 1]) {
        best = std::min(best, at(i - 2, j - 2) + 1);  // adjacent transposition
      }
      at(i, j) = best;
    }
  }
  return at(n, m);
}

double sdl(std::span<const ActivityIndex> s1, std::span<const ActivityIndex> s2) {
  const std::size_t longest = std::max(s1.size(), s2.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(dl_distance(s1, s2)) / static_cast<double>(longest);
}

double ras(std::span<const ActivityIndex> ground, std::span<const ActivityIndex> predicted) {
  if (ground.empty() && predicted.empty()) return 1.0;
  std::unordered_map<ActivityIndex, std::int64_t> diff;
  for (ActivityIndex a : ground) diff[a] += 1;
  for (ActivityIndex a : predicted) diff[a] -= 1;
  std::int64_t abs_diff = 0;
  for (const auto& [a, d] : diff) abs_diff += std::abs(d);
  const auto total = static_cast<std::int64_t>(ground.size() + predicted.size());
  return 1.0 - static_cast<double>(abs_diff) / static_cast<double>(total);
}

double mae(std::span<const std::pair<double, double>> pairs) {
  if (pairs.empty()) throw std::invalid_argument("MAE requires at least one pair");
  double sum = 0.0;
  for (const auto& [actual, predicted] : pairs) sum += std::abs(actual - predicted);
  return sum / static_cast<double>(pairs.size());
}

RepetitionProfile repetition_profile(std::span<const ActivityIndex> s) {
  RepetitionProfile profile;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = i + 1;
    while (j < s.size() && s[j] == s[i]) ++j;
    profile[static_cast<int>(j - i)] += 1;
    i = j;
  }
  return profile;
}

void accumulate_profile(RepetitionProfile& aggregate, const RepetitionProfile& part) {
  for (const auto& [len, count] : part) aggregate[len] += count;
}

double profile_l1(const RepetitionProfile& a, const RepetitionProfile& b) {
  std::int64_t total_a = 0, total_b = 0;
  for (const auto& [len, count] : a) total_a += count;
  for (const auto& [len, count] : b) total_b += count;
  if (total_a == 0 && total_b == 0) return 0.0;

  double l1 = 0.0;
  auto fraction = [](std::int64_t count, std::int64_t total) {
    return total == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(total);
  };
  auto it_a = a.begin();
  auto it_b = b.begin();
  while (it_a != a.end() || it_b != b.end()) {
    if (it_b == b.end() || (it_a != a.end() && it_a->first < it_b->first)) {
      l1 += std::abs(fraction(it_a->second, total_a));
      ++it_a;
    } else if (it_a == a.end() || it_b->first < it_a->first) {
      l1 += std::abs(fraction(it_b->second, total_b));
      ++it_b;
    } else {
      l1 += std::abs(fraction(it_a->second, total_a) - fraction(it_b->second, total_b));
      ++it_a;
      ++it_b;
    }
  }
  return l1;
}

}  // namespace casepred

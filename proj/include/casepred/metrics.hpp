#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "casepred/eventlog.hpp"

namespace casepred {

/// Histogram of maximal consecutive same-activity run lengths.
using RepetitionProfile = std::map<int, std::int64_t>;

/// Optimal-string-alignment Damerau-Levenshtein distance: unit-cost insert,
/// delete, substitute and adjacent transposition, with no substring edited
/// twice.
int dl_distance(std::span<const ActivityIndex> s1, std::span<const ActivityIndex> s2);

/// Sequence similarity in [0,1]: 1 - DL(s1,s2) / max(len(s1), len(s2)).
/// Two empty sequences compare as identical (1.0).
double sdl(std::span<const ActivityIndex> s1, std::span<const ActivityIndex> s2);

/// Repetitive-activity similarity in [0,1]: over the union of activities in
/// either sequence, 1 - sum |count_G(a) - count_P(a)| / sum (count_G(a) +
/// count_P(a)). Order-insensitive; two empty sequences compare as 1.0.
double ras(std::span<const ActivityIndex> ground, std::span<const ActivityIndex> predicted);

/// Mean absolute error over (actual, predicted) duration pairs, in the
/// pairs' own unit. Throws std::invalid_argument on an empty list.
double mae(std::span<const std::pair<double, double>> pairs);

/// Tallies maximal runs of identical consecutive activities by length;
/// sum over (length * count) equals the sequence length.
RepetitionProfile repetition_profile(std::span<const ActivityIndex> s);

void accumulate_profile(RepetitionProfile& aggregate, const RepetitionProfile& part);

/// L1 distance between two profiles normalized to run-length distributions
/// (each divided by its total run count). Two empty profiles compare as 0.
double profile_l1(const RepetitionProfile& a, const RepetitionProfile& b);

}  // namespace casepred

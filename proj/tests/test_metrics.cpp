#include <doctest.h>

#include <vector>

#include "casepred/metrics.hpp"
#include "casepred/rng.hpp"
#include "support/dl_oracle.hpp"

using namespace casepred;

namespace {
using Seq = std::vector<ActivityIndex>;

Seq random_sequence(RandomStream& rng, int max_len, int symbols) {
  Seq s(rng.next_below(static_cast<std::uint64_t>(max_len) + 1));
  for (auto& a : s) a = static_cast<ActivityIndex>(rng.next_below(symbols));
  return s;
}
}  // namespace

TEST_CASE("dl_distance matches the worked examples") {
  CHECK(dl_distance(Seq{0, 1, 2}, Seq{0, 2, 1}) == 1);  // one adjacent swap
  CHECK(dl_distance(Seq{0, 1, 2}, Seq{0, 1, 2}) == 0);
  CHECK(dl_distance(Seq{0, 1}, Seq{}) == 2);
  CHECK(dl_distance(Seq{}, Seq{0, 1, 2}) == 3);
  CHECK(dl_distance(Seq{0}, Seq{1}) == 1);
  // OSA restriction: "ca" -> "abc" costs 3, not 2.
  CHECK(dl_distance(Seq{2, 0}, Seq{0, 1, 2}) == 3);
}

TEST_CASE("dl_distance equals the recursive oracle on short exhaustive pairs") {
  const auto seqs = testsupport::all_sequences(3, 4);
  for (const auto& a : seqs) {
    for (const auto& b : seqs) {
      CAPTURE(a.size());
      CAPTURE(b.size());
      REQUIRE(dl_distance(a, b) == testsupport::dl_distance_oracle(a, b));
    }
  }
}

TEST_CASE("dl_distance oracle agreement, symmetry and bound on random longer pairs") {
  RandomStream rng(2024);
  for (int i = 0; i < 10000; ++i) {
    const Seq a = random_sequence(rng, 12, 4);
    const Seq b = random_sequence(rng, 12, 4);
    const int d = dl_distance(a, b);
    REQUIRE(d == testsupport::dl_distance_oracle(a, b));
    REQUIRE(d == dl_distance(b, a));
    REQUIRE(d <= static_cast<int>(std::max(a.size(), b.size())));
    REQUIRE(d >= 0);
  }
}

TEST_CASE("sdl reproduces the unit-cost swap example") {
  CHECK(sdl(Seq{0, 1, 2}, Seq{0, 2, 1}) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(sdl(Seq{5, 6, 7}, Seq{5, 6, 7}) == 1.0);
  CHECK(sdl(Seq{0, 1}, Seq{2, 3}) == 0.0);
  CHECK(sdl(Seq{}, Seq{}) == 1.0);
  CHECK(sdl(Seq{}, Seq{1, 2}) == 0.0);
}

TEST_CASE("ras on count multisets") {
  CHECK(ras(Seq{0, 0, 1}, Seq{1, 0, 0}) == 1.0);          // same counts, different order
  CHECK(ras(Seq{0, 0, 0}, Seq{1, 1, 1}) == 0.0);          // disjoint activities
  CHECK(ras(Seq{0, 0, 1}, Seq{0, 1}) == doctest::Approx(0.8));  // 1 - 1/5
  CHECK(ras(Seq{}, Seq{}) == 1.0);
  CHECK(ras(Seq{0}, Seq{}) == 0.0);
}

TEST_CASE("ras is order-insensitive") {
  RandomStream rng(7);
  for (int i = 0; i < 200; ++i) {
    Seq a = random_sequence(rng, 10, 3);
    Seq b = random_sequence(rng, 10, 3);
    const double base = ras(a, b);
    // reverse is a permutation
    Seq ar(a.rbegin(), a.rend());
    Seq br(b.rbegin(), b.rend());
    CHECK(ras(ar, b) == doctest::Approx(base));
    CHECK(ras(a, br) == doctest::Approx(base));
  }
}

TEST_CASE("sdl and ras stay in range and equal 1 only on equality") {
  RandomStream rng(99);
  for (int i = 0; i < 5000; ++i) {
    const Seq a = random_sequence(rng, 8, 3);
    const Seq b = random_sequence(rng, 8, 3);
    const double s = sdl(a, b);
    const double r = ras(a, b);
    REQUIRE(s >= 0.0);
    REQUIRE(s <= 1.0);
    REQUIRE(r >= 0.0);
    REQUIRE(r <= 1.0);
    if (s == 1.0) REQUIRE(a == b);
    if (a == b) REQUIRE(s == 1.0);
  }
}

TEST_CASE("mae basics") {
  const std::vector<std::pair<double, double>> pairs = {{10.0, 12.0}, {5.0, 5.0}};
  CHECK(mae(pairs) == doctest::Approx(1.0));
  const std::vector<std::pair<double, double>> equal = {{3.0, 3.0}, {8.0, 8.0}};
  CHECK(mae(equal) == 0.0);
  const std::vector<std::pair<double, double>> single = {{0.0, 36.0}};
  CHECK(mae(single) == doctest::Approx(36.0));
  const std::vector<std::pair<double, double>> empty;
  CHECK_THROWS_AS(mae(empty), std::invalid_argument);
}

TEST_CASE("mae detects a constant translation") {
  RandomStream rng(3);
  std::vector<std::pair<double, double>> pairs;
  const double shift = 2.5;
  for (int i = 0; i < 100; ++i) {
    const double v = rng.next_double() * 50.0;
    pairs.emplace_back(v, v + shift);
  }
  CHECK(mae(pairs) == doctest::Approx(shift));
}

TEST_CASE("repetition_profile decomposes maximal runs") {
  CHECK(repetition_profile(Seq{0, 0, 0, 1}) == RepetitionProfile{{3, 1}, {1, 1}});
  CHECK(repetition_profile(Seq{}) == RepetitionProfile{});
  CHECK(repetition_profile(Seq{0, 1, 0}) == RepetitionProfile{{1, 3}});

  RandomStream rng(5);
  for (int i = 0; i < 500; ++i) {
    const Seq s = random_sequence(rng, 20, 3);
    const auto profile = repetition_profile(s);
    std::int64_t total = 0;
    for (const auto& [len, count] : profile) total += len * count;
    REQUIRE(total == static_cast<std::int64_t>(s.size()));
  }
}

TEST_CASE("profile_l1 compares run-length distributions") {
  RepetitionProfile a{{1, 2}, {2, 2}};  // half runs length 1, half length 2
  RepetitionProfile b{{1, 1}, {2, 1}};  // same shape, different scale
  CHECK(profile_l1(a, b) == doctest::Approx(0.0));

  RepetitionProfile c{{5, 3}};
  CHECK(profile_l1(a, c) == doctest::Approx(2.0));  // disjoint supports
  CHECK(profile_l1({}, {}) == 0.0);
  CHECK(profile_l1(a, a) == 0.0);
}

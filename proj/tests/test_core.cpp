#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "confrec/error.hpp"
#include "confrec/model.hpp"
#include "support.hpp"

using namespace confrec;
using namespace confrec::testing;

namespace {

Dataset three_people() {
  return make_dataset({{"A", pv(5, 4, 3, 2, 1)}, {"B", pv(1, 2, 3, 4, 5)}, {"C", pv(3, 3, 3, 3, 3)}},
                      {{"A", "B", Epoch::past, 80, 7}, {"B", "C", Epoch::present, 10, 2}});
}

}  // namespace

TEST_CASE("validate_dataset accepts a well-formed dataset") {
  CHECK(validate_dataset(three_people()).empty());
}

TEST_CASE("validate_dataset reports an unknown participant") {
  Dataset d = three_people();
  d.contacts.push_back({"A", "X", Epoch::present, 5, 1});
  auto v = validate_dataset(d);
  REQUIRE(v.size() == 1);
  CHECK(v[0].detail.find("'X'") != std::string::npos);
}

TEST_CASE("validate_dataset reports an out-of-range rating by trait") {
  Dataset d = three_people();
  d.profiles["C"].ratings[1] = 6;
  auto v = validate_dataset(d);
  REQUIRE(v.size() == 1);
  CHECK(v[0].rule.find("extroversion") != std::string::npos);
  CHECK(v[0].subject == "profile 'C'");
}

TEST_CASE("validate_dataset covers the remaining invariants") {
  Dataset d = three_people();
  d.contacts.push_back({"A", "A", Epoch::past, 1, 1});
  d.contacts.push_back({"B", "A", Epoch::past, 3, 1});  // same pair and epoch as A-B past
  d.contacts.push_back({"A", "C", Epoch::present, 5, 0});
  d.contacts.push_back({"B", "C", Epoch::past, -1, 1});
  d.participants.push_back("D");
  d.config.beta = 1.5;
  auto v = validate_dataset(d);
  auto has = [&](std::string_view rule) {
    return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.rule == rule; });
  };
  CHECK(has("distinct pair members"));
  CHECK(has("one record per pair and epoch"));
  CHECK(has("zero frequency implies zero duration"));
  CHECK(has("duration >= 0"));
  CHECK(has("has profile"));
  CHECK(has("beta in [0,1]"));
  CHECK_THROWS_AS(require_valid(d), Error);
}

TEST_CASE("validate_dataset is idempotent and order-insensitive") {
  Dataset d = random_dataset(12, 7);
  d.contacts.push_back({"U00", "ghost", Epoch::past, 5, 1});
  d.contacts.push_back({"U01", "U02", Epoch::past, 5, 0});
  d.profiles["U03"].ratings[4] = 0;
  const auto baseline = validate_dataset(d);
  CHECK(baseline.size() >= 3);
  CHECK(validate_dataset(d) == baseline);

  std::mt19937_64 rng(99);
  for (int round = 0; round < 20; ++round) {
    Dataset shuffled = d;
    std::shuffle(shuffled.contacts.begin(), shuffled.contacts.end(), rng);
    std::shuffle(shuffled.participants.begin(), shuffled.participants.end(), rng);
    CHECK(validate_dataset(shuffled) == baseline);
  }
}

TEST_CASE("pair_index enumerates unordered pairs lexicographically") {
  Dataset d = make_dataset({{"C", pv(1, 1, 1, 1, 1)}, {"A", pv(1, 1, 1, 1, 1)}, {"B", pv(1, 1, 1, 1, 1)}});
  using P = std::pair<ParticipantId, ParticipantId>;
  CHECK(pair_index(d) == std::vector<P>{{"A", "B"}, {"A", "C"}, {"B", "C"}});

  Dataset two = make_dataset({{"B", pv(1, 1, 1, 1, 1)}, {"A", pv(1, 1, 1, 1, 1)}});
  CHECK(pair_index(two) == std::vector<P>{{"A", "B"}});
}

TEST_CASE("pair_index needs two participants") {
  Dataset one = make_dataset({{"A", pv(1, 1, 1, 1, 1)}});
  CHECK_THROWS_WITH_AS(pair_index(one), "insufficient participants", Error);
}

TEST_CASE("pair count is n(n-1)/2 for random n") {
  CHECK(pair_index(random_dataset(77, 1, 0.0)).size() == 2926);

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> size(2, 120);
  for (int round = 0; round < 25; ++round) {
    const std::size_t n = size(rng);
    auto pairs = pair_index(random_dataset(n, rng(), 0.0));
    CHECK(pairs.size() == n * (n - 1) / 2);
    CHECK(std::is_sorted(pairs.begin(), pairs.end()));
    CHECK(std::adjacent_find(pairs.begin(), pairs.end()) == pairs.end());
    for (const auto& [a, b] : pairs) CHECK(a < b);
  }
}

TEST_CASE("ParticipantIndex slots invert and match pair order") {
  ParticipantIndex index({"d", "a", "c", "b", "e"});
  CHECK(index.pair_count() == 10);
  std::size_t expected = 0;
  for (std::size_t i = 0; i < index.size(); ++i) {
    for (std::size_t j = i + 1; j < index.size(); ++j, ++expected) {
      CHECK(index.pair_slot(i, j) == expected);
      CHECK(index.pair_slot(j, i) == expected);
      CHECK(index.pair_at(expected) == std::pair{i, j});
    }
  }
  CHECK(index.at("c") == 2);
  CHECK_FALSE(index.find("z").has_value());
  CHECK_THROWS_AS(index.at("z"), Error);
}

TEST_CASE("PairScoreMatrix is symmetric by construction") {
  PairScoreMatrix m(ParticipantIndex({"A", "B", "C"}));
  m.set(2, 0, 0.25);
  CHECK(m.at(0, 2) == 0.25);
  CHECK(m.at("C", "A") == 0.25);
  CHECK(m.packed().size() == 3);
}

TEST_CASE("epoch and mode tokens") {
  CHECK(parse_epoch("past") == Epoch::past);
  CHECK(parse_epoch("present") == Epoch::present);
  CHECK_FALSE(parse_epoch("yesterday"));
  CHECK(parse_normalization_mode("raw_sum") == NormalizationMode::raw_sum);
  CHECK_FALSE(parse_normalization_mode("zscore"));
}

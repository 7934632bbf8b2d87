#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "confrec/baselines.hpp"
#include "confrec/error.hpp"
#include "confrec/evaluation.hpp"
#include "confrec/personality.hpp"
#include "confrec/synthetic.hpp"
#include "support.hpp"

using namespace confrec;
using namespace confrec::testing;

namespace {

// Five participants with pairwise personality below 0.5 and the three pairs
// A-B, A-C, B-C in maximal present contact.
Dataset judged_fixture() {
  return make_dataset({{"A", pv(1, 2, 3, 4, 5)},
                       {"B", pv(5, 4, 3, 2, 1)},
                       {"C", pv(3, 3, 3, 3, 3)},
                       {"D", pv(1, 5, 1, 5, 1)},
                       {"E", pv(5, 1, 5, 1, 5)}},
                      {{"A", "B", Epoch::present, 80, 7},
                       {"A", "C", Epoch::present, 80, 7},
                       {"B", "C", Epoch::present, 80, 7},
                       {"D", "E", Epoch::present, 5, 1}});
}

std::vector<Recommendation> one_per_pair(const Dataset& d) {
  std::vector<Recommendation> recs;
  for (const auto& [a, b] : pair_index(d)) {
    Recommendation r;
    r.for_participant = a;
    r.suggested = b;
    r.merged_score = 0.9;
    r.bucket_tenths = 9;
    recs.push_back(r);
  }
  return recs;
}

DatasetView whole(const Dataset& d) {
  std::vector<std::size_t> all(make_index(d).pair_count());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return DatasetView(d, all);
}

}  // namespace

TEST_CASE("split_slots sizes") {
  auto [train, test] = split_slots(100, {0.7, 1});
  CHECK(train.size() == 70);
  CHECK(test.size() == 30);

  auto [big_train, big_test] = split_slots(2926, {0.7, 42});
  CHECK(big_train.size() == 2048);
  CHECK(big_test.size() == 878);

  std::vector<std::size_t> joined(big_train);
  joined.insert(joined.end(), big_test.begin(), big_test.end());
  std::sort(joined.begin(), joined.end());
  for (std::size_t k = 0; k < joined.size(); ++k) CHECK(joined[k] == k);
}

TEST_CASE("split_slots is deterministic per seed") {
  CHECK(split_slots(500, {0.7, 9}) == split_slots(500, {0.7, 9}));
  CHECK_FALSE(split_slots(500, {0.7, 9}) == split_slots(500, {0.7, 10}));
  auto [train, test] = split_slots(2, {0.99, 1});
  CHECK(train.size() == 1);
  CHECK(test.size() == 1);
}

TEST_CASE("split_pairs errors") {
  const Dataset two = make_dataset({{"A", pv(1, 2, 3, 4, 5)}, {"B", pv(1, 2, 3, 4, 5)}});
  CHECK_THROWS_AS(split_pairs(two, {}), Error);
  const Dataset d = random_dataset(10, 1);
  CHECK_THROWS_AS(split_pairs(d, {0.0, 1}), Error);
  CHECK_THROWS_AS(split_pairs(d, {1.0, 1}), Error);
  const Split s = split_pairs(d, {0.7, 3});
  CHECK(s.train.pair_count() + s.test.pair_count() == 45);
  for (std::size_t slot : s.test.pair_slots()) CHECK_FALSE(s.train.contains(slot));
}

TEST_CASE("DatasetView materializes member contacts only") {
  const Dataset d = random_dataset(12, 4, 0.5);
  const Split s = split_pairs(d, {0.7, 5});
  const Dataset test = s.test.materialize();
  CHECK(test.profiles == d.profiles);
  CHECK(validate_dataset(test).empty());
  for (const auto& c : test.contacts) CHECK(s.test.contains(c.a, c.b));
  CHECK(test.contacts.size() + s.train.materialize().contacts.size() == d.contacts.size());
}

TEST_CASE("accuracy examples") {
  const Dataset d = judged_fixture();
  const DatasetView view = whole(d);
  const auto recs = one_per_pair(d);
  REQUIRE(recs.size() == 10);
  const RelevanceCriteria by_tie{RelevanceMode::test_tie, 0.5};
  CHECK(accuracy(recs, view, by_tie) == doctest::Approx(0.3).epsilon(1e-15));

  std::vector<Recommendation> hits(recs.begin(), recs.begin() + 2);  // A-B, A-C
  CHECK(accuracy(hits, view, by_tie) == 1.0);
  std::vector<Recommendation> misses(recs.end() - 1, recs.end());  // D-E
  CHECK(accuracy(misses, view, by_tie) == 0.0);

  CHECK_THROWS_WITH_AS(accuracy({}, view, by_tie), "accuracy undefined on zero recommendations", Error);
}

TEST_CASE("relevance modes") {
  const Dataset d = judged_fixture();
  const DatasetView view = whole(d);
  const auto recs = one_per_pair(d);
  // A=(1..5) and D=(1,5,1,5,1) are uncorrelated; no pair reaches 0.5 by personality.
  CHECK(accuracy(recs, view, {RelevanceMode::test_personality, 0.5}) == 0.0);
  CHECK(accuracy(recs, view, {RelevanceMode::either, 0.5}) == doctest::Approx(0.3));
  CHECK(accuracy(recs, view, {RelevanceMode::test_personality, -1.0}) == 1.0);

  // Pairs outside the view never count.
  const DatasetView only_first(d, {0});
  CHECK(accuracy(recs, only_first, {RelevanceMode::test_personality, -1.0}) == doctest::Approx(0.1));
}

TEST_CASE("accuracy is monotone as tau decreases") {
  const Dataset d = random_dataset(15, 12, 0.4);
  const Split s = split_pairs(d, {0.5, 2});
  const auto recs = one_per_pair(d);
  for (RelevanceMode mode : {RelevanceMode::test_tie, RelevanceMode::test_personality, RelevanceMode::either}) {
    double previous = -1.0;
    for (double tau = 1.0; tau >= -1.0; tau -= 0.05) {
      const double acc = accuracy(recs, s.test, {mode, tau});
      CHECK(acc >= previous);
      previous = acc;
    }
  }
}

TEST_CASE("mae examples") {
  CHECK(mae(0.036) == 0.964);
  CHECK(mae(0.042) == 0.958);
  CHECK(mae(1.0) == 0.0);
  CHECK_THROWS_AS(mae(-0.1), Error);
  CHECK_THROWS_AS(mae(1.1), Error);
}

TEST_CASE("nmae examples") {
  CHECK(nmae(0.782, 1, 5) == doctest::Approx(0.1955).epsilon(1e-12));
  CHECK(std::abs(nmae(0.782, 1, 5) - 0.196) <= 0.001);
  CHECK(nmae(0.0, 1, 5) == 0.0);
  CHECK(nmae(0.964, 1, 5) == doctest::Approx(0.241).epsilon(1e-12));
  CHECK_THROWS_AS(nmae(0.5, 5, 5), Error);
  CHECK_THROWS_AS(nmae(0.5, 5, 1), Error);
}

TEST_CASE("method tokens") {
  CHECK(parse_method("c1") == Method::c1);
  CHECK_FALSE(parse_method("c3"));
  CHECK(to_string(Method::sparp) == "sparp");
  CHECK(parse_relevance_mode("either") == RelevanceMode::either);
}

TEST_CASE("run_experiment rows satisfy the metric identities") {
  const Dataset d = generate_synthetic(SynthesisParams::defaults(77, 42));
  const std::vector<double> betas{0.1, 0.2, 0.3, 0.4};
  const std::vector<Method> methods{Method::sparp, Method::c1, Method::c2};
  const MetricsReport report = run_experiment(d, betas, methods, {}, {});
  CHECK(report.rows.size() <= 36);
  CHECK_FALSE(report.rows.empty());
  CHECK(report.rows.size() + report.notes.size() == 36);
  for (const auto& r : report.rows) {
    CHECK(r.mae == 1.0 - r.accuracy);
    CHECK(r.nmae == r.mae / 4.0);
    CHECK(r.accuracy >= 0.0);
    CHECK(r.accuracy <= 1.0);
    CHECK(r.recommendation_count > 0);
    CHECK(r.bucket_tenths >= kFirstReportedBucket);
    CHECK(r.bucket_tenths <= kLastReportedBucket);
  }

  const MetricsReport one = run_experiment(d, std::vector<double>{0.1}, std::vector<Method>{Method::sparp}, {}, {});
  for (const auto& r : one.rows) {
    CHECK(r.method == Method::sparp);
    CHECK(r.mae + r.accuracy == 1.0);
  }
}

TEST_CASE("run_experiment matches an independent recount") {
  const Dataset d = generate_synthetic(SynthesisParams::defaults(77, 7));
  const std::vector<double> betas{0.1, 0.4};
  const std::vector<Method> methods{Method::sparp, Method::c1, Method::c2};
  const RelevanceCriteria crit{RelevanceMode::either, 0.5};
  const SplitSpec spec{0.7, 11};
  const MetricsReport report = run_experiment(d, betas, methods, crit, spec);

  // Oracle relevance straight from the records.
  const Split split = split_pairs(d, spec);
  const ParticipantIndex index(d.participants);
  std::map<std::pair<std::string, std::string>, double> weight;
  double max_weight = 0.0;
  for (const auto& c : d.contacts) {
    if (c.epoch != Epoch::present || !split.test.contains(c.a, c.b)) continue;
    const double w = c.duration_minutes * static_cast<double>(c.frequency);
    weight[canonical_pair(c.a, c.b)] = w;
    max_weight = std::max(max_weight, w);
  }
  auto relevant = [&](const std::string& a, const std::string& b) {
    if (!split.test.contains(a, b)) return false;
    auto it = weight.find(canonical_pair(a, b));
    const double tie = it == weight.end() ? 0.0 : it->second / max_weight;
    return tie >= 0.5 || oracle_pearson(d.profiles.at(a), d.profiles.at(b)) >= 0.5;
  };

  std::vector<MetricsRow> expected;
  for (Method m : methods) {
    for (double beta : betas) {
      const auto recs = recommend(fitted_scores(d, split.train, m, beta), d.config.gamma, d.config.top_n);
      std::map<int, std::pair<std::size_t, std::size_t>> tally;  // bucket -> (total, successes)
      for (const auto& r : recs) {
        if (!split.test.contains(r.for_participant, r.suggested)) continue;
        const int bucket = static_cast<int>(std::lround(r.merged_score * 10));
        if (bucket < 8 || bucket > 10) continue;
        auto& t = tally[bucket];
        ++t.first;
        t.second += relevant(r.for_participant, r.suggested) ? 1 : 0;
      }
      for (const auto& [bucket, t] : tally) {
        MetricsRow row{m, beta, bucket, 0, 0, 0, t.first, t.second};
        row.accuracy = static_cast<double>(t.second) / static_cast<double>(t.first);
        row.mae = 1.0 - row.accuracy;
        row.nmae = row.mae / 4.0;
        expected.push_back(row);
      }
    }
  }
  CHECK(report.rows == expected);
}

TEST_CASE("run_experiment is deterministic and thread-count independent") {
  const Dataset d = generate_synthetic(SynthesisParams::defaults(77, 42));
  const std::vector<double> betas{0.1, 0.2, 0.3, 0.4};
  const std::vector<Method> methods{Method::sparp, Method::c1, Method::c2};
  const MetricsReport serial = run_experiment(d, betas, methods, {}, {}, 1);
  for (std::size_t threads : {2u, 4u, 16u}) {
    const MetricsReport parallel = run_experiment(d, betas, methods, {}, {}, threads);
    CHECK(parallel.rows == serial.rows);
    CHECK(parallel.notes == serial.notes);
  }
}

TEST_CASE("run_experiment rejects invalid input") {
  Dataset d = generate_synthetic(SynthesisParams::defaults(20, 1));
  const std::vector<Method> methods{Method::sparp};
  CHECK_THROWS_AS(run_experiment(d, std::vector<double>{1.5}, methods, {}, {}), Error);
  d.contacts.push_back({"P01", "nobody", Epoch::past, 5, 1});
  CHECK_THROWS_AS(run_experiment(d, std::vector<double>{0.1}, methods, {}, {}), Error);
}

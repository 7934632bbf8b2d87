#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "confrec/baselines.hpp"
#include "confrec/synthetic.hpp"
#include "support.hpp"

using namespace confrec;
using namespace confrec::testing;

namespace {

Dataset people(std::size_t n, std::vector<ContactRecord> contacts = {}) {
  std::vector<std::pair<ParticipantId, PersonalityVector>> ps;
  for (std::size_t i = 0; i < n; ++i) ps.emplace_back(std::string(1, static_cast<char>('a' + i)), pv(1, 2, 3, 4, 5));
  return make_dataset(std::move(ps), std::move(contacts));
}

void check_symmetric_unit(const PairScoreMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      CHECK(m.at(i, j) == m.at(j, i));
      CHECK(m.at(i, j) >= 0.0);
      CHECK(m.at(i, j) <= 1.0);
    }
  }
}

}  // namespace

TEST_CASE("baselines score strangers as zero") {
  const Dataset d = people(4);
  const PairScoreMatrix c1 = c1_score(d);
  const PairScoreMatrix c2 = c2_score(d);
  for (double v : c1.packed()) CHECK(v == 0.0);
  for (double v : c2.packed()) CHECK(v == 0.0);
}

TEST_CASE("c1 single maximal pair without third parties is 1") {
  const Dataset d = people(2, {{"a", "b", Epoch::present, 80, 7}});
  CHECK(c1_score(d).at("a", "b") == 1.0);
}

TEST_CASE("c1 closes triangles through strong neighbors") {
  // a-c and b-c strong, a-b absent: 0 + 0.5 * 1 / (3 - 2)
  const Dataset d = people(3, {{"a", "c", Epoch::present, 80, 7}, {"b", "c", Epoch::present, 80, 7}});
  const PairScoreMatrix m = c1_score(d);
  CHECK(m.at("a", "b") == doctest::Approx(0.5));
  CHECK(m.at("a", "c") == 1.0);

  // One more participant dilutes the closure term: 0.5 * 1 / 2.
  const Dataset four = people(4, {{"a", "c", Epoch::present, 80, 7}, {"b", "c", Epoch::present, 80, 7}});
  CHECK(c1_score(four).at("a", "b") == doctest::Approx(0.25));

  C1Options opts;
  opts.lambda = 1.0;
  CHECK(c1_score(d, opts).at("a", "b") == doctest::Approx(1.0));
}

TEST_CASE("c1 ignores past contacts and weak neighbors") {
  const Dataset d = people(3, {{"a", "c", Epoch::present, 80, 7},
                               {"b", "c", Epoch::present, 10, 1},
                               {"a", "b", Epoch::past, 80, 7}});
  CHECK(c1_score(d).at("a", "b") == 0.0);
}

TEST_CASE("c2 normalizes duration by the maximum") {
  const Dataset d = people(3, {{"a", "b", Epoch::present, 80, 1}, {"a", "c", Epoch::present, 40, 7}});
  const PairScoreMatrix m = c2_score(d);
  CHECK(m.at("a", "b") == 1.0);
  CHECK(m.at("a", "c") == 0.5);
  CHECK(m.at("b", "c") == 0.0);
  CHECK(c2_score(d, 160.0).at("a", "b") == 0.5);
  CHECK(c2_score(d, 40.0).at("a", "b") == 1.0);  // clamped
}

TEST_CASE("baselines are symmetric and bounded on synthetic data") {
  const Dataset d = generate_synthetic(SynthesisParams::defaults(77, 9));
  check_symmetric_unit(c1_score(d));
  check_symmetric_unit(c2_score(d));
}

TEST_CASE("c2 ignores frequency, c1 does not") {
  Dataset d = generate_synthetic(SynthesisParams::defaults(40, 3));
  const PairScoreMatrix c1 = c1_score(d);
  const PairScoreMatrix c2 = c2_score(d);
  for (auto& c : d.contacts) c.frequency = c.frequency % 7 + 1;
  CHECK(c2_score(d) == c2);
  CHECK_FALSE(c1_score(d) == c1);
}

#include "confrec/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include <fmt/format.h>

#include "confrec/baselines.hpp"
#include "confrec/error.hpp"
#include "confrec/kernels.hpp"
#include "confrec/personality.hpp"
#include "confrec/random.hpp"
#include "confrec/tie.hpp"

namespace confrec {

DatasetView::DatasetView(const Dataset& data, std::vector<std::size_t> pair_slots)
    : data_(&data), index_(make_index(data)), slots_(std::move(pair_slots)), member_(index_.pair_count(), 0) {
  std::sort(slots_.begin(), slots_.end());
  for (std::size_t s : slots_) {
    if (s >= member_.size()) throw Error(fmt::format("pair slot {} out of range", s));
    member_[s] = 1;
  }
}

bool DatasetView::contains(std::string_view a, std::string_view b) const {
  auto i = index_.find(a);
  auto j = index_.find(b);
  if (!i || !j || *i == *j) return false;
  return contains(index_.pair_slot(*i, *j));
}

Dataset DatasetView::materialize() const {
  Dataset out;
  out.participants = data_->participants;
  out.profiles = data_->profiles;
  out.config = data_->config;
  for (const auto& c : data_->contacts) {
    if (contains(c.a, c.b)) out.contacts.push_back(c);
  }
  return out;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_slots(std::size_t pairs, const SplitSpec& spec) {
  if (!(spec.train_ratio > 0.0 && spec.train_ratio < 1.0)) {
    throw Error(fmt::format("train ratio must lie in (0,1), got {}", spec.train_ratio));
  }
  if (pairs < 2) throw Error("split needs at least 2 pairs");

  std::vector<std::size_t> order(pairs);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(spec.seed);
  shuffle(std::span(order), rng);

  auto train_size = static_cast<std::size_t>(std::llround(spec.train_ratio * static_cast<double>(pairs)));
  train_size = std::clamp<std::size_t>(train_size, 1, pairs - 1);
  const auto cut = order.begin() + static_cast<std::ptrdiff_t>(train_size);
  std::vector<std::size_t> train(order.begin(), cut);
  std::vector<std::size_t> test(cut, order.end());
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {std::move(train), std::move(test)};
}

Split split_pairs(const Dataset& d, const SplitSpec& spec) {
  auto [train, test] = split_slots(make_index(d).pair_count(), spec);
  return {DatasetView(d, std::move(train)), DatasetView(d, std::move(test))};
}

std::string_view to_string(RelevanceMode m) {
  switch (m) {
    case RelevanceMode::test_tie: return "test_tie";
    case RelevanceMode::test_personality: return "test_personality";
    case RelevanceMode::either: return "either";
  }
  return "either";
}

std::optional<RelevanceMode> parse_relevance_mode(std::string_view token) {
  if (token == "test_tie") return RelevanceMode::test_tie;
  if (token == "test_personality") return RelevanceMode::test_personality;
  if (token == "either") return RelevanceMode::either;
  return std::nullopt;
}

RelevanceJudge::RelevanceJudge(const DatasetView& test, const RelevanceCriteria& crit)
    : test_(&test), crit_(crit), tie_(test.index().pair_count(), 0.0), personality_(personality_matrix(test.data())) {
  if (!std::isfinite(crit.tau)) throw Error("relevance tau must be finite");
  const PairScoreMatrix weights = present_weights(test.data());
  double max_weight = 0.0;
  for (std::size_t s : test.pair_slots()) max_weight = std::max(max_weight, weights.packed()[s]);
  if (max_weight > 0.0) {
    for (std::size_t s : test.pair_slots()) tie_[s] = weights.packed()[s] / max_weight;
  }
}

bool RelevanceJudge::successful(std::string_view a, std::string_view b) const {
  const auto& index = test_->index();
  auto i = index.find(a);
  auto j = index.find(b);
  if (!i || !j || *i == *j) return false;
  const std::size_t slot = index.pair_slot(*i, *j);
  if (!test_->contains(slot)) return false;
  const bool by_tie = tie_[slot] >= crit_.tau;
  const bool by_personality = personality_.packed()[slot] >= crit_.tau;
  switch (crit_.mode) {
    case RelevanceMode::test_tie: return by_tie;
    case RelevanceMode::test_personality: return by_personality;
    case RelevanceMode::either: return by_tie || by_personality;
  }
  return false;
}

std::size_t count_successful(std::span<const Recommendation> recs, const RelevanceJudge& judge) {
  return static_cast<std::size_t>(std::count_if(recs.begin(), recs.end(), [&](const Recommendation& r) {
    return judge.successful(r.for_participant, r.suggested);
  }));
}

double accuracy(std::span<const Recommendation> recs, const DatasetView& test, const RelevanceCriteria& crit) {
  if (recs.empty()) throw Error("accuracy undefined on zero recommendations");
  const RelevanceJudge judge(test, crit);
  return static_cast<double>(count_successful(recs, judge)) / static_cast<double>(recs.size());
}

double mae(double accuracy) {
  if (!(accuracy >= 0.0 && accuracy <= 1.0)) throw Error(fmt::format("accuracy must lie in [0,1], got {}", accuracy));
  return 1.0 - accuracy;
}

double nmae(double mae, int r_min, int r_max) {
  if (r_max <= r_min) throw Error(fmt::format("rating bounds need r_max > r_min, got [{}, {}]", r_min, r_max));
  return mae / static_cast<double>(r_max - r_min);
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::sparp: return "sparp";
    case Method::c1: return "c1";
    case Method::c2: return "c2";
  }
  return "sparp";
}

std::optional<Method> parse_method(std::string_view token) {
  if (token == "sparp") return Method::sparp;
  if (token == "c1") return Method::c1;
  if (token == "c2") return Method::c2;
  return std::nullopt;
}

namespace {

double max_over(const PairScoreMatrix& m, const DatasetView& view) {
  double hi = 0.0;
  for (std::size_t s : view.pair_slots()) hi = std::max(hi, m.packed()[s]);
  return hi;
}

struct CellResult {
  std::vector<MetricsRow> rows;
  std::vector<std::string> notes;
};

CellResult run_cell(const Dataset& d, const Split& split, const RelevanceJudge& judge, Method method, double beta) {
  const auto& cfg = d.config;
  const PairScoreMatrix scores = fitted_scores(d, split.train, method, beta);
  std::vector<Recommendation> recs = recommend(scores, cfg.gamma, cfg.top_n);
  std::erase_if(recs, [&](const Recommendation& r) { return !split.test.contains(r.for_participant, r.suggested); });

  CellResult out;
  for (int bucket = kFirstReportedBucket; bucket <= kLastReportedBucket; ++bucket) {
    std::vector<Recommendation> in_bucket;
    std::copy_if(recs.begin(), recs.end(), std::back_inserter(in_bucket),
                 [bucket](const Recommendation& r) { return r.bucket_tenths == bucket; });
    if (in_bucket.empty()) {
      out.notes.push_back(fmt::format("{} beta={} bucket={:.1f}: no recommendations, row omitted", to_string(method),
                                      beta, bucket / 10.0));
      continue;
    }
    MetricsRow row;
    row.method = method;
    row.beta = beta;
    row.bucket_tenths = bucket;
    row.recommendation_count = in_bucket.size();
    row.successful_count = count_successful(in_bucket, judge);
    row.accuracy = static_cast<double>(row.successful_count) / static_cast<double>(row.recommendation_count);
    row.mae = mae(row.accuracy);
    row.nmae = nmae(row.mae);
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace

PairScoreMatrix fitted_scores(const Dataset& d, const DatasetView& train, Method method, double beta) {
  switch (method) {
    case Method::sparp: {
      const PairScoreMatrix ties = tie_matrix(d, beta);
      const PairScoreMatrix personality = personality_matrix(d);
      PairScoreMatrix raw = merge_scores(ties, personality, NormalizationMode::raw_sum);
      if (d.config.mode == NormalizationMode::raw_sum) return raw;
      ScoreBounds bounds{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
      for (std::size_t s : train.pair_slots()) {
        bounds.lo = std::min(bounds.lo, raw.packed()[s]);
        bounds.hi = std::max(bounds.hi, raw.packed()[s]);
      }
      return rescale_minmax(raw, bounds);
    }
    case Method::c1: {
      C1Options opts;
      opts.max_weight = max_over(present_weights(d), train);
      return c1_score(d, opts);
    }
    case Method::c2:
      return c2_score(d, max_over(present_durations(d), train));
  }
  throw Error("unknown method");
}

MetricsReport run_experiment(const Dataset& d, std::span<const double> betas, std::span<const Method> methods,
                             const RelevanceCriteria& crit, const SplitSpec& spec, std::size_t threads) {
  require_valid(d);
  for (double beta : betas) {
    if (!(beta >= 0.0 && beta <= 1.0)) throw Error(fmt::format("beta must lie in [0,1], got {}", beta));
  }
  const Split split = split_pairs(d, spec);
  const RelevanceJudge judge(split.test, crit);

  const std::size_t cells = methods.size() * betas.size();
  std::vector<CellResult> results(cells);
  auto work = [&](std::size_t cell) {
    results[cell] = run_cell(d, split, judge, methods[cell / betas.size()], betas[cell % betas.size()]);
  };

  threads = std::max<std::size_t>(1, std::min(threads, cells));
  if (threads == 1) {
    for (std::size_t c = 0; c < cells; ++c) work(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t c = next++; c < cells; c = next++) work(c);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  MetricsReport report;
  report.criteria = crit;
  report.split = spec;
  for (auto& r : results) {
    report.rows.insert(report.rows.end(), r.rows.begin(), r.rows.end());
    report.notes.insert(report.notes.end(), r.notes.begin(), r.notes.end());
  }
  return report;
}

}  // namespace confrec

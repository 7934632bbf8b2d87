#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "confrec/hybrid.hpp"
#include "confrec/model.hpp"

namespace confrec {

struct SplitSpec {
  double train_ratio = 0.7;
  std::uint64_t seed = 42;
};

/// A subset of a dataset's pairs. Profiles are shared; contacts are those of
/// the member pairs. Does not own the dataset.
class DatasetView {
 public:
  DatasetView(const Dataset& data, std::vector<std::size_t> pair_slots);

  const Dataset& data() const { return *data_; }
  const ParticipantIndex& index() const { return index_; }
  /// Member pair slots, ascending.
  const std::vector<std::size_t>& pair_slots() const { return slots_; }
  std::size_t pair_count() const { return slots_.size(); }
  bool contains(std::size_t slot) const { return member_[slot] != 0; }
  bool contains(std::string_view a, std::string_view b) const;

  /// The viewed dataset: all participants and profiles, member-pair contacts.
  Dataset materialize() const;

 private:
  const Dataset* data_;
  ParticipantIndex index_;
  std::vector<std::size_t> slots_;
  std::vector<char> member_;
};

struct Split {
  DatasetView train;
  DatasetView test;
};

/// Seeded partition of slots 0..pairs-1 into (train, test), each ascending.
/// |train| = round(ratio * pairs), kept within [1, pairs - 1].
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_slots(std::size_t pairs, const SplitSpec& spec);

/// Seeded uniform partition of all pairs; |train| = round(ratio * P), kept
/// within [1, P - 1]. Throws Error for fewer than two pairs or a ratio
/// outside (0, 1).
Split split_pairs(const Dataset& d, const SplitSpec& spec);

enum class RelevanceMode { test_tie, test_personality, either };

std::string_view to_string(RelevanceMode m);
std::optional<RelevanceMode> parse_relevance_mode(std::string_view token);

/// When a recommendation counts as successful. Tie relevance uses the pair's
/// present-epoch freq*dur normalized by the maximum over the test view;
/// personality relevance uses the Pearson similarity.
struct RelevanceCriteria {
  RelevanceMode mode = RelevanceMode::either;
  double tau = 0.5;
};

/// Judges recommendations against a test view.
class RelevanceJudge {
 public:
  RelevanceJudge(const DatasetView& test, const RelevanceCriteria& crit);
  /// False for pairs outside the test view.
  bool successful(std::string_view a, std::string_view b) const;

  double normalized_tie(std::size_t slot) const { return tie_[slot]; }
  double personality(std::size_t slot) const { return personality_.packed()[slot]; }

 private:
  const DatasetView* test_;
  RelevanceCriteria crit_;
  std::vector<double> tie_;
  PairScoreMatrix personality_;
};

std::size_t count_successful(std::span<const Recommendation> recs, const RelevanceJudge& judge);

/// successful / total. Throws Error on an empty list.
double accuracy(std::span<const Recommendation> recs, const DatasetView& test, const RelevanceCriteria& crit);

/// 1 - accuracy; throws Error outside [0, 1].
double mae(double accuracy);

/// mae / (r_max - r_min); throws Error unless r_max > r_min.
double nmae(double mae, int r_min = kRatingMin, int r_max = kRatingMax);

enum class Method { sparp, c1, c2 };

std::string_view to_string(Method m);
std::optional<Method> parse_method(std::string_view token);

struct MetricsRow {
  Method method = Method::sparp;
  double beta = 0.0;
  int bucket_tenths = 0;
  double accuracy = 0.0;
  double mae = 0.0;
  double nmae = 0.0;
  std::size_t recommendation_count = 0;
  std::size_t successful_count = 0;

  friend bool operator==(const MetricsRow&, const MetricsRow&) = default;
};

struct MetricsReport {
  RelevanceCriteria criteria;
  SplitSpec split;
  std::vector<MetricsRow> rows;
  /// Buckets skipped because no recommendation fell into them.
  std::vector<std::string> notes;
};

inline constexpr int kFirstReportedBucket = 8;
inline constexpr int kLastReportedBucket = 10;

/// Scores every pair with `method`, normalization fitted on the train view.
PairScoreMatrix fitted_scores(const Dataset& d, const DatasetView& train, Method method, double beta);

/// Recommendations on test-view pairs, bucketed, with accuracy/MAE/NMAE per
/// (method, beta, bucket). Rows come out in methods x betas x bucket order
/// for any thread count.
MetricsReport run_experiment(const Dataset& d, std::span<const double> betas, std::span<const Method> methods,
                             const RelevanceCriteria& crit, const SplitSpec& spec, std::size_t threads = 1);

}  // namespace confrec

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "confrec/model.hpp"

namespace confrec {

/// Range used by min-max normalization.
struct ScoreBounds {
  double lo = 0.0;
  double hi = 0.0;
};

ScoreBounds score_bounds(const PairScoreMatrix& m);

/// Rescales every entry by (x - lo) / (hi - lo), clamped to [0, 1]. Uses the
/// matrix's own range unless `bounds` is given; a constant range maps to 0.5.
PairScoreMatrix rescale_minmax(const PairScoreMatrix& m, std::optional<ScoreBounds> bounds = std::nullopt);

/// tie + personality per pair (the raw merge), then normalized per `mode`.
/// Throws Error when the two matrices do not share a participant index.
PairScoreMatrix merge_scores(const PairScoreMatrix& ties, const PairScoreMatrix& personalities,
                             NormalizationMode mode, std::optional<ScoreBounds> bounds = std::nullopt);

struct Recommendation {
  ParticipantId for_participant;
  ParticipantId suggested;
  double merged_score = 0.0;
  std::optional<double> tie_component;
  std::optional<double> personality_component;
  int bucket_tenths = 0;  // merged_score rounded to one decimal, times ten

  double bucket() const { return bucket_tenths / 10.0; }
  friend bool operator==(const Recommendation&, const Recommendation&) = default;
};

int bucket_of(double score);

/// Per participant (ascending id), every partner scoring >= gamma, highest
/// score first and ascending partner id on ties, cut to top_n when given.
std::vector<Recommendation> recommend(const PairScoreMatrix& merged, double gamma,
                                      std::optional<std::size_t> top_n = std::nullopt);

/// All three stages of one hybrid run.
struct HybridScores {
  PairScoreMatrix tie;
  PairScoreMatrix personality;
  PairScoreMatrix merged;
};

HybridScores hybrid_scores(const Dataset& d, double beta, NormalizationMode mode);

/// Fills tie/personality components of recommendations made from `scores`.
void attach_components(std::vector<Recommendation>& recs, const HybridScores& scores);

/// tie_matrix -> personality_matrix -> merge_scores -> recommend, driven by
/// the dataset's config. Validates the dataset first.
std::vector<Recommendation> run_pipeline(const Dataset& d);

}  // namespace confrec

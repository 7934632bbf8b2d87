#pragma once

// Scoring analogs of the two comparison methods. Neither method publishes a
// scoring formula; these are reconstructions from their descriptions and use
// present-epoch contacts only.
//
//   C1 (tie strength + triadic closure):
//     w(a,b)  = dur*freq / max_pairs(dur*freq), clamped to [0,1]
//     s(a,b)  = w(a,b) + lambda * |strong(a) & strong(b)| / (n - 2)
//     strong(x) = { y : w(x,y) >= strong_threshold }, result clamped to [0,1]
//   C2 (F2F link weight):
//     s(a,b)  = dur(a,b) / max_pairs(dur), clamped to [0,1]

#include <optional>

#include "confrec/model.hpp"

namespace confrec {

struct C1Options {
  double lambda = 0.5;
  double strong_threshold = 0.5;
  /// Normalizer for dur*freq. Defaults to the dataset maximum.
  std::optional<double> max_weight;
};

PairScoreMatrix c1_score(const Dataset& d, const C1Options& opts = {});

/// `max_duration` defaults to the dataset maximum.
PairScoreMatrix c2_score(const Dataset& d, std::optional<double> max_duration = std::nullopt);

/// Present-epoch dur*freq and duration per pair; 0 where no record exists.
PairScoreMatrix present_weights(const Dataset& d);
PairScoreMatrix present_durations(const Dataset& d);

}  // namespace confrec

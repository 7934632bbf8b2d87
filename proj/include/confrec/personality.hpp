#pragma once

#include <span>

#include "confrec/model.hpp"

namespace confrec {

struct PersonalitySimilarity {
  double value = 0.0;       // in [-1, 1]
  bool degenerate = false;  // a vector had zero variance; value is then 0
};

/// Pearson correlation of two Big-Five rating vectors. Throws Error if a
/// vector holds a rating outside [1, 5].
PersonalitySimilarity pearson_personality(const PersonalityVector& a, const PersonalityVector& b);

/// Pearson correlation of two real vectors of equal length (>= 2), centered
/// on their own means. Used where ratings are not integers.
PersonalitySimilarity pearson_real(std::span<const double> a, std::span<const double> b);

/// Pearson similarity for every pair of participants.
PairScoreMatrix personality_matrix(const Dataset& d);

}  // namespace confrec

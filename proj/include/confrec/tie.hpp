#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "confrec/model.hpp"

namespace confrec {

struct RawTie {
  double value = 0.0;
  bool clamped = false;  // lenient policy cut the value down to 1
};

/// frequency * duration / total_time.
///
/// Throws Error when total_time <= 0, inputs are negative, or the value
/// exceeds 1 under the strict policy; `pair_label` is quoted in that message.
RawTie raw_tie(std::int64_t frequency, double duration, double total_time,
               OverflowPolicy policy = OverflowPolicy::strict, std::string_view pair_label = {});

/// Blend of past and present ties weighted by beta. Throws when beta is
/// outside [0, 1] or a tie is negative.
double estimate_tie(double past, double present, double beta);

/// Per-epoch raw ties and their blend for every pair.
struct TieMatrices {
  PairScoreMatrix past;
  PairScoreMatrix present;
  PairScoreMatrix estimated;
  std::size_t clamped_pairs = 0;
};

/// Raw ties for one epoch; pairs with no record get 0.
PairScoreMatrix epoch_ties(const Dataset& d, Epoch epoch, std::size_t* clamped_pairs = nullptr);

TieMatrices tie_components(const Dataset& d, double beta);

/// Estimated tie for every pair (config total time and overflow policy).
PairScoreMatrix tie_matrix(const Dataset& d, double beta);

}  // namespace confrec

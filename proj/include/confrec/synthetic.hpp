#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>

#include "confrec/model.hpp"

namespace confrec {

/// counts[trait][rating - 1] = number of participants with that rating.
using TraitCounts = std::array<std::array<std::size_t, 5>, kTraitCount>;

/// minutes (or contact count) -> number of contact records.
using Histogram = std::map<int, std::size_t>;

/// Published rating counts of the 77-participant conference cohort.
TraitCounts reference_trait_counts();

struct SynthesisParams {
  std::size_t n_participants = 77;
  TraitCounts personality_counts{};
  Histogram past_durations;
  Histogram present_durations;
  /// Empty means: draw each frequency uniformly from [1, max_frequency].
  Histogram past_frequencies;
  Histogram present_frequencies;
  int max_frequency = 7;
  int max_duration_minutes = 80;
  double total_time_minutes = 720.0;
  std::uint64_t seed = 42;

  /// Reference marginals scaled to n participants. For n = 77 the trait
  /// counts are the published table and the duration histograms pin 44
  /// records at 5 min (past) and 27 at 80 min (present); the rest of each
  /// epoch is spread evenly over the other 5-minute bins up to 80.
  static SynthesisParams defaults(std::size_t n = 77, std::uint64_t seed = 42);
};

/// Deterministic for a given params value. Ratings per trait and durations
/// per epoch match the requested counts exactly; each epoch's records land
/// on distinct uniformly chosen pairs. Throws Error for inconsistent params,
/// including histogram totals above the participant or pair count.
Dataset generate_synthetic(const SynthesisParams& p);

TraitCounts trait_counts(const Dataset& d);
Histogram duration_histogram(const Dataset& d, Epoch epoch);
Histogram frequency_histogram(const Dataset& d, Epoch epoch);

/// Human-readable tally of the marginals above.
std::string marginal_summary(const Dataset& d);

}  // namespace confrec

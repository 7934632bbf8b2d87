#include "confrec/tie.hpp"

#include <vector>

#include <fmt/format.h>

#include "confrec/error.hpp"
#include "confrec/kernels.hpp"

namespace confrec {

RawTie raw_tie(std::int64_t frequency, double duration, double total_time, OverflowPolicy policy,
               std::string_view pair_label) {
  if (!(total_time > 0.0)) throw Error(fmt::format("total time must be positive, got {}", total_time));
  if (frequency < 0) throw Error(fmt::format("negative contact frequency {}", frequency));
  if (!(duration >= 0.0)) throw Error(fmt::format("negative contact duration {}", duration));

  const double f = static_cast<double>(frequency);
  double value = 0.0;
  kernels::scalar_table().raw_ties(&f, &duration, total_time, &value, 1);
  if (value <= 1.0) return {value, false};
  if (policy == OverflowPolicy::lenient) return {1.0, true};
  throw Error(fmt::format("raw tie {} exceeds 1 for pair {}", value, pair_label.empty() ? "?" : pair_label));
}

double estimate_tie(double past, double present, double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw Error(fmt::format("beta must lie in [0,1], got {}", beta));
  if (!(past >= 0.0) || !(present >= 0.0)) throw Error("ties must be non-negative");
  return kernels::blend_value(past, present, beta);
}

PairScoreMatrix epoch_ties(const Dataset& d, Epoch epoch, std::size_t* clamped_pairs) {
  const auto& cfg = d.config;
  if (!(cfg.total_time_minutes > 0.0)) {
    throw Error(fmt::format("total time must be positive, got {}", cfg.total_time_minutes));
  }
  ParticipantIndex index = make_index(d);
  const std::size_t slots = index.pair_count();
  std::vector<double> freq(slots, 0.0);
  std::vector<double> dur(slots, 0.0);
  for (const auto& c : d.contacts) {
    if (c.epoch != epoch) continue;
    if (c.frequency < 0 || !(c.duration_minutes >= 0.0)) {
      throw Error(fmt::format("negative contact values for pair {}-{}", c.a, c.b));
    }
    const std::size_t slot = index.pair_slot(index.at(c.a), index.at(c.b));
    freq[slot] = static_cast<double>(c.frequency);
    dur[slot] = c.duration_minutes;
  }

  PairScoreMatrix out(index);
  auto values = out.packed();
  kernels::raw_ties(freq, dur, cfg.total_time_minutes, values);

  std::size_t clamped = 0;
  for (std::size_t slot = 0; slot < slots; ++slot) {
    if (values[slot] <= 1.0) continue;
    if (cfg.overflow == OverflowPolicy::strict) {
      auto [i, j] = index.pair_at(slot);
      throw Error(fmt::format("raw tie {} exceeds 1 for pair {}-{} ({} epoch)", values[slot], index.id(i),
                              index.id(j), to_string(epoch)));
    }
    values[slot] = 1.0;
    ++clamped;
  }
  if (clamped_pairs) *clamped_pairs += clamped;
  return out;
}

TieMatrices tie_components(const Dataset& d, double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw Error(fmt::format("beta must lie in [0,1], got {}", beta));
  TieMatrices out;
  out.past = epoch_ties(d, Epoch::past, &out.clamped_pairs);
  out.present = epoch_ties(d, Epoch::present, &out.clamped_pairs);
  out.estimated = PairScoreMatrix(out.past.index());
  kernels::blend(out.past.packed(), out.present.packed(), beta, out.estimated.packed());
  return out;
}

PairScoreMatrix tie_matrix(const Dataset& d, double beta) { return tie_components(d, beta).estimated; }

}  // namespace confrec

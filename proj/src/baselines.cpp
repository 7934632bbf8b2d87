#include "confrec/baselines.hpp"

#include <algorithm>
#include <vector>

#include "confrec/kernels.hpp"

namespace confrec {
namespace {

template <typename F>
PairScoreMatrix present_pair_values(const Dataset& d, F value_of) {
  PairScoreMatrix out(make_index(d));
  const auto& index = out.index();
  for (const auto& c : d.contacts) {
    if (c.epoch != Epoch::present) continue;
    out.set(index.at(c.a), index.at(c.b), value_of(c));
  }
  return out;
}

// x / scale clamped to [0, 1]; all zeros when scale is not positive.
void normalize_by(std::span<double> values, double scale) {
  if (!(scale > 0.0)) {
    std::fill(values.begin(), values.end(), 0.0);
    return;
  }
  kernels::rescale(values, 0.0, scale, values);
}

}  // namespace

PairScoreMatrix present_weights(const Dataset& d) {
  return present_pair_values(d, [](const ContactRecord& c) { return c.duration_minutes * static_cast<double>(c.frequency); });
}

PairScoreMatrix present_durations(const Dataset& d) {
  return present_pair_values(d, [](const ContactRecord& c) { return c.duration_minutes; });
}

PairScoreMatrix c1_score(const Dataset& d, const C1Options& opts) {
  PairScoreMatrix w = present_weights(d);
  const double scale = opts.max_weight.value_or(kernels::min_max(w.packed()).second);
  normalize_by(w.packed(), scale);

  const auto& index = w.index();
  const std::size_t n = index.size();
  std::vector<std::vector<char>> strong(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (w.at(i, j) >= opts.strong_threshold) strong[i][j] = strong[j][i] = 1;
    }
  }

  PairScoreMatrix out(index);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double closure = 0.0;
      if (n > 2) {
        std::size_t common = 0;
        for (std::size_t k = 0; k < n; ++k) common += static_cast<std::size_t>(strong[i][k] & strong[j][k]);
        closure = opts.lambda * static_cast<double>(common) / static_cast<double>(n - 2);
      }
      out.set(i, j, std::clamp(w.at(i, j) + closure, 0.0, 1.0));
    }
  }
  return out;
}

PairScoreMatrix c2_score(const Dataset& d, std::optional<double> max_duration) {
  PairScoreMatrix out = present_durations(d);
  const double scale = max_duration.value_or(kernels::min_max(out.packed()).second);
  normalize_by(out.packed(), scale);
  return out;
}

}  // namespace confrec

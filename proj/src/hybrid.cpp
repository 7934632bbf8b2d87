#include "confrec/hybrid.hpp"

#include <algorithm>
#include <cmath>

#include "confrec/error.hpp"
#include "confrec/kernels.hpp"
#include "confrec/personality.hpp"
#include "confrec/tie.hpp"

namespace confrec {

ScoreBounds score_bounds(const PairScoreMatrix& m) {
  auto [lo, hi] = kernels::min_max(m.packed());
  return {lo, hi};
}

PairScoreMatrix rescale_minmax(const PairScoreMatrix& m, std::optional<ScoreBounds> bounds) {
  const ScoreBounds b = bounds.value_or(score_bounds(m));
  PairScoreMatrix out(m.index());
  kernels::rescale(m.packed(), b.lo, b.hi, out.packed());
  return out;
}

PairScoreMatrix merge_scores(const PairScoreMatrix& ties, const PairScoreMatrix& personalities,
                             NormalizationMode mode, std::optional<ScoreBounds> bounds) {
  if (!(ties.index() == personalities.index())) throw Error("dimension mismatch between tie and personality matrices");
  PairScoreMatrix raw(ties.index());
  kernels::add(ties.packed(), personalities.packed(), raw.packed());
  if (mode == NormalizationMode::raw_sum) return raw;
  return rescale_minmax(raw, bounds);
}

int bucket_of(double score) { return static_cast<int>(std::lround(score * 10.0)); }

std::vector<Recommendation> recommend(const PairScoreMatrix& merged, double gamma,
                                      std::optional<std::size_t> top_n) {
  const auto& index = merged.index();
  const std::size_t n = index.size();
  std::vector<Recommendation> out;
  std::vector<std::pair<double, std::size_t>> candidates;
  for (std::size_t a = 0; a < n; ++a) {
    candidates.clear();
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a) continue;
      const double s = merged.at(a, b);
      if (s >= gamma) candidates.emplace_back(s, b);
    }
    // Partner index order is id order, so this is score desc, id asc.
    std::sort(candidates.begin(), candidates.end(), [](const auto& x, const auto& y) {
      return x.first != y.first ? x.first > y.first : x.second < y.second;
    });
    if (top_n && candidates.size() > *top_n) candidates.resize(*top_n);
    for (const auto& [score, b] : candidates) {
      Recommendation r;
      r.for_participant = index.id(a);
      r.suggested = index.id(b);
      r.merged_score = score;
      r.bucket_tenths = bucket_of(score);
      out.push_back(std::move(r));
    }
  }
  return out;
}

HybridScores hybrid_scores(const Dataset& d, double beta, NormalizationMode mode) {
  HybridScores s;
  s.tie = tie_matrix(d, beta);
  s.personality = personality_matrix(d);
  s.merged = merge_scores(s.tie, s.personality, mode);
  return s;
}

void attach_components(std::vector<Recommendation>& recs, const HybridScores& scores) {
  const auto& index = scores.merged.index();
  for (auto& r : recs) {
    const std::size_t a = index.at(r.for_participant);
    const std::size_t b = index.at(r.suggested);
    r.tie_component = scores.tie.at(a, b);
    r.personality_component = scores.personality.at(a, b);
  }
}

std::vector<Recommendation> run_pipeline(const Dataset& d) {
  require_valid(d);
  const auto& cfg = d.config;
  HybridScores scores = hybrid_scores(d, cfg.beta, cfg.mode);
  auto recs = recommend(scores.merged, cfg.gamma, cfg.top_n);
  attach_components(recs, scores);
  return recs;
}

}  // namespace confrec

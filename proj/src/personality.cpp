#include "confrec/personality.hpp"

#include <numeric>
#include <vector>

#include <fmt/format.h>

#include "confrec/error.hpp"
#include "confrec/kernels.hpp"

namespace confrec {
namespace {

// Ratings scaled by the trait count and centered: 5*r_k - sum(r). Integer
// valued, so dot products and sums of squares are exact in double.
std::array<double, kTraitCount> scaled_centered(const PersonalityVector& p) {
  const int sum = std::accumulate(p.ratings.begin(), p.ratings.end(), 0);
  std::array<double, kTraitCount> out{};
  for (std::size_t k = 0; k < kTraitCount; ++k) {
    out[k] = static_cast<double>(static_cast<int>(kTraitCount) * p.ratings[k] - sum);
  }
  return out;
}

double sum_squares(const std::array<double, kTraitCount>& c) {
  double s = 0.0;
  for (double x : c) s += x * x;
  return s;
}

void require_valid_vector(const PersonalityVector& p) {
  if (!p.valid()) throw Error("personality rating out of range");
}

}  // namespace

PersonalitySimilarity pearson_personality(const PersonalityVector& a, const PersonalityVector& b) {
  require_valid_vector(a);
  require_valid_vector(b);
  const auto ca = scaled_centered(a);
  const auto cb = scaled_centered(b);
  const double ssa = sum_squares(ca);
  const double ssb = sum_squares(cb);

  // Row kernel over a two-entry column set, so this value is exactly the
  // matrix entry.
  std::array<std::array<double, 2>, kTraitCount> columns{};
  for (std::size_t k = 0; k < kTraitCount; ++k) columns[k] = {ca[k], cb[k]};
  const std::array<double, 2> ss{ssa, ssb};
  kernels::TraitColumnsView view;
  for (std::size_t k = 0; k < kTraitCount; ++k) view.centered[k] = columns[k].data();
  view.sum_squares = ss.data();
  view.count = 2;
  double value = 0.0;
  kernels::scalar_table().pearson_row(view, 0, &value);
  return {value, ssa == 0.0 || ssb == 0.0};
}

PersonalitySimilarity pearson_real(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) throw Error("pearson_real needs two equal-length vectors of size >= 2");
  const double n = static_cast<double>(a.size());
  const double mean_a = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mean_b = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double dot = 0.0;
  double ssa = 0.0;
  double ssb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double da = a[k] - mean_a;
    const double db = b[k] - mean_b;
    dot += da * db;
    ssa += da * da;
    ssb += db * db;
  }
  const bool degenerate = ssa == 0.0 || ssb == 0.0;
  double value = kernels::pearson_value(dot, ssa, ssb);
  // Rounding in the real-valued route can push |value| a hair past 1.
  value = std::min(1.0, std::max(-1.0, value));
  return {value, degenerate};
}

PairScoreMatrix personality_matrix(const Dataset& d) {
  ParticipantIndex index = make_index(d);
  const std::size_t n = index.size();

  std::array<std::vector<double>, kTraitCount> columns;
  for (auto& col : columns) col.resize(n);
  std::vector<double> ss(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto it = d.profiles.find(index.id(i));
    if (it == d.profiles.end()) throw Error(fmt::format("no personality profile for '{}'", index.id(i)));
    if (!it->second.valid()) throw Error(fmt::format("personality rating out of range for '{}'", index.id(i)));
    const auto c = scaled_centered(it->second);
    for (std::size_t k = 0; k < kTraitCount; ++k) columns[k][i] = c[k];
    ss[i] = sum_squares(c);
  }

  kernels::TraitColumnsView view;
  for (std::size_t k = 0; k < kTraitCount; ++k) view.centered[k] = columns[k].data();
  view.sum_squares = ss.data();
  view.count = n;

  PairScoreMatrix out(index);
  const auto& kernel = kernels::active_table();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    kernel.pearson_row(view, i, out.packed().data() + index.pair_slot(i, i + 1));
  }
  return out;
}

}  // namespace confrec

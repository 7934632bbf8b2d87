#pragma once

// Data-parallel inner loops over packed pair arrays.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant picked at runtime. Variants perform the same IEEE operations in the
// same order (no FMA contraction), so their outputs are bit-identical; the
// tests check this directly.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string_view>

#include "confrec/model.hpp"

namespace confrec::kernels {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

/// True when the AVX2 variant was compiled in and the CPU supports it.
bool avx2_supported();

/// Selected variant. Defaults to the best supported one; the CONFREC_ISA
/// environment variable ("scalar" or "avx2") or set_isa() override it.
Isa active_isa();
void set_isa(Isa isa);

/// Mean-free trait ratings in column (structure-of-arrays) form. For integer
/// ratings the columns hold 5*r_k - sum(r), which is exact.
struct TraitColumnsView {
  std::array<const double*, kTraitCount> centered{};
  const double* sum_squares = nullptr;
  std::size_t count = 0;
};

/// beta*past + (1-beta)*present, kept inside [min, max] of the two inputs.
inline double blend_value(double past, double present, double beta) {
  const double one_minus = 1.0 - beta;
  const double v = beta * past + one_minus * present;
  return std::min(std::max(v, std::min(past, present)), std::max(past, present));
}

/// Pearson coefficient from a centered dot product and the two centered sums
/// of squares; 0 when either vector has zero variance.
inline double pearson_value(double dot, double ss_a, double ss_b) {
  if (ss_a == 0.0 || ss_b == 0.0) return 0.0;
  return dot / std::sqrt(ss_a * ss_b);
}

struct KernelTable {
  Isa isa;
  /// out[k] = freq[k] * dur[k] / total
  void (*raw_ties)(const double* freq, const double* dur, double total, double* out, std::size_t n);
  /// out[k] = blend_value(past[k], present[k], beta)
  void (*blend)(const double* past, const double* present, double beta, double* out, std::size_t n);
  void (*add)(const double* a, const double* b, double* out, std::size_t n);
  /// lo = +inf and hi = -inf when n == 0
  void (*min_max)(const double* in, std::size_t n, double* lo, double* hi);
  /// (x - lo) / (hi - lo) clamped to [0,1]; 0.5 everywhere when hi <= lo
  void (*rescale)(const double* in, double lo, double hi, double* out, std::size_t n);
  /// out[j - row - 1] = Pearson(row, j) for j in (row, count)
  void (*pearson_row)(const TraitColumnsView& cols, std::size_t row, double* out);
};

const KernelTable& scalar_table();
/// nullptr when the AVX2 variant is not compiled in.
const KernelTable* avx2_table();
const KernelTable& active_table();

// Span front ends over the active table.
void raw_ties(std::span<const double> freq, std::span<const double> dur, double total, std::span<double> out);
void blend(std::span<const double> past, std::span<const double> present, double beta, std::span<double> out);
void add(std::span<const double> a, std::span<const double> b, std::span<double> out);
std::pair<double, double> min_max(std::span<const double> in);
void rescale(std::span<const double> in, double lo, double hi, std::span<double> out);

}  // namespace confrec::kernels

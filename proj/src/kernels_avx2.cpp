// Compiled with -mavx2 only; callers reach it through the dispatch table
// after a CPU check. No FMA: results must match the scalar kernels bit for bit.

#include "confrec/kernels.hpp"

#include <immintrin.h>

#include <limits>

namespace confrec::kernels {
namespace {

constexpr std::size_t kLanes = 4;

void raw_ties_avx2(const double* freq, const double* dur, double total, double* out, std::size_t n) {
  const __m256d t = _mm256_set1_pd(total);
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(freq + k), _mm256_loadu_pd(dur + k));
    _mm256_storeu_pd(out + k, _mm256_div_pd(prod, t));
  }
  for (; k < n; ++k) out[k] = freq[k] * dur[k] / total;
}

void blend_avx2(const double* past, const double* present, double beta, double* out, std::size_t n) {
  const __m256d b = _mm256_set1_pd(beta);
  const __m256d one_minus = _mm256_set1_pd(1.0 - beta);
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    const __m256d p = _mm256_loadu_pd(past + k);
    const __m256d q = _mm256_loadu_pd(present + k);
    __m256d v = _mm256_add_pd(_mm256_mul_pd(b, p), _mm256_mul_pd(one_minus, q));
    v = _mm256_max_pd(v, _mm256_min_pd(p, q));
    v = _mm256_min_pd(v, _mm256_max_pd(p, q));
    _mm256_storeu_pd(out + k, v);
  }
  for (; k < n; ++k) out[k] = blend_value(past[k], present[k], beta);
}

void add_avx2(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    _mm256_storeu_pd(out + k, _mm256_add_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k)));
  }
  for (; k < n; ++k) out[k] = a[k] + b[k];
}

double hmin(__m256d v) {
  __m128d m = _mm_min_pd(_mm256_castpd256_pd128(v), _mm256_extractf128_pd(v, 1));
  return std::min(_mm_cvtsd_f64(m), _mm_cvtsd_f64(_mm_unpackhi_pd(m, m)));
}

double hmax(__m256d v) {
  __m128d m = _mm_max_pd(_mm256_castpd256_pd128(v), _mm256_extractf128_pd(v, 1));
  return std::max(_mm_cvtsd_f64(m), _mm_cvtsd_f64(_mm_unpackhi_pd(m, m)));
}

void min_max_avx2(const double* in, std::size_t n, double* lo, double* hi) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  __m256d l = _mm256_set1_pd(inf);
  __m256d h = _mm256_set1_pd(-inf);
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    const __m256d x = _mm256_loadu_pd(in + k);
    l = _mm256_min_pd(l, x);
    h = _mm256_max_pd(h, x);
  }
  double ls = hmin(l);
  double hs = hmax(h);
  for (; k < n; ++k) {
    ls = std::min(ls, in[k]);
    hs = std::max(hs, in[k]);
  }
  *lo = ls;
  *hi = hs;
}

void rescale_avx2(const double* in, double lo, double hi, double* out, std::size_t n) {
  if (!(hi > lo)) {
    std::fill(out, out + n, 0.5);
    return;
  }
  const double range = hi - lo;
  const __m256d vlo = _mm256_set1_pd(lo);
  const __m256d vrange = _mm256_set1_pd(range);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    __m256d y = _mm256_div_pd(_mm256_sub_pd(_mm256_loadu_pd(in + k), vlo), vrange);
    y = _mm256_min_pd(_mm256_max_pd(y, zero), one);
    _mm256_storeu_pd(out + k, y);
  }
  for (; k < n; ++k) out[k] = std::min(std::max((in[k] - lo) / range, 0.0), 1.0);
}

void pearson_row_avx2(const TraitColumnsView& cols, std::size_t row, double* out) {
  const auto& c = cols.centered;
  const double ss_row = cols.sum_squares[row];
  __m256d a[kTraitCount];
  for (std::size_t t = 0; t < kTraitCount; ++t) a[t] = _mm256_set1_pd(c[t][row]);
  const __m256d ssa = _mm256_set1_pd(ss_row);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d row_degenerate = _mm256_cmp_pd(ssa, zero, _CMP_EQ_OQ);

  std::size_t j = row + 1;
  for (; j + kLanes <= cols.count; j += kLanes) {
    __m256d dot = _mm256_mul_pd(a[0], _mm256_loadu_pd(c[0] + j));
    dot = _mm256_add_pd(dot, _mm256_mul_pd(a[1], _mm256_loadu_pd(c[1] + j)));
    dot = _mm256_add_pd(dot, _mm256_mul_pd(a[2], _mm256_loadu_pd(c[2] + j)));
    dot = _mm256_add_pd(dot, _mm256_mul_pd(a[3], _mm256_loadu_pd(c[3] + j)));
    dot = _mm256_add_pd(dot, _mm256_mul_pd(a[4], _mm256_loadu_pd(c[4] + j)));
    const __m256d ssb = _mm256_loadu_pd(cols.sum_squares + j);
    const __m256d value = _mm256_div_pd(dot, _mm256_sqrt_pd(_mm256_mul_pd(ssa, ssb)));
    const __m256d degenerate = _mm256_or_pd(row_degenerate, _mm256_cmp_pd(ssb, zero, _CMP_EQ_OQ));
    _mm256_storeu_pd(out + (j - row - 1), _mm256_blendv_pd(value, zero, degenerate));
  }
  for (; j < cols.count; ++j) {
    double dot = c[0][row] * c[0][j];
    dot = dot + c[1][row] * c[1][j];
    dot = dot + c[2][row] * c[2][j];
    dot = dot + c[3][row] * c[3][j];
    dot = dot + c[4][row] * c[4][j];
    out[j - row - 1] = pearson_value(dot, ss_row, cols.sum_squares[j]);
  }
}

}  // namespace

const KernelTable& avx2_kernels() {
  static const KernelTable table{Isa::avx2, raw_ties_avx2, blend_avx2, add_avx2,
                                 min_max_avx2, rescale_avx2, pearson_row_avx2};
  return table;
}

}  // namespace confrec::kernels

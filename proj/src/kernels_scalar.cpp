#include "confrec/kernels.hpp"

#include <limits>

namespace confrec::kernels {
namespace {

void raw_ties_scalar(const double* freq, const double* dur, double total, double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = freq[k] * dur[k] / total;
}

void blend_scalar(const double* past, const double* present, double beta, double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = blend_value(past[k], present[k], beta);
}

void add_scalar(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = a[k] + b[k];
}

void min_max_scalar(const double* in, std::size_t n, double* lo, double* hi) {
  double l = std::numeric_limits<double>::infinity();
  double h = -l;
  for (std::size_t k = 0; k < n; ++k) {
    l = std::min(l, in[k]);
    h = std::max(h, in[k]);
  }
  *lo = l;
  *hi = h;
}

void rescale_scalar(const double* in, double lo, double hi, double* out, std::size_t n) {
  if (!(hi > lo)) {
    std::fill(out, out + n, 0.5);
    return;
  }
  const double range = hi - lo;
  for (std::size_t k = 0; k < n; ++k) out[k] = std::min(std::max((in[k] - lo) / range, 0.0), 1.0);
}

void pearson_row_scalar(const TraitColumnsView& cols, std::size_t row, double* out) {
  const auto& c = cols.centered;
  const double ss_row = cols.sum_squares[row];
  for (std::size_t j = row + 1; j < cols.count; ++j) {
    double dot = c[0][row] * c[0][j];
    dot = dot + c[1][row] * c[1][j];
    dot = dot + c[2][row] * c[2][j];
    dot = dot + c[3][row] * c[3][j];
    dot = dot + c[4][row] * c[4][j];
    out[j - row - 1] = pearson_value(dot, ss_row, cols.sum_squares[j]);
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::scalar, raw_ties_scalar, blend_scalar, add_scalar,
                                 min_max_scalar, rescale_scalar, pearson_row_scalar};
  return table;
}

}  // namespace confrec::kernels

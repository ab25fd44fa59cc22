#include "carnot/kernels.hpp"

namespace carnot::kernels::scalar {

void bracket_accumulate(std::span<const BracketRow> rows, std::span<const double> pool,
                        std::span<const double> a, std::span<const double> b,
                        std::span<double> out) {
  for (const BracketRow& row : rows) {
    const double w = a[row.i] * b[row.j] - a[row.j] * b[row.i];
    if (w == 0.0) continue;
    const double* c = pool.data() + row.offset;
    double* y = out.data() + row.k_begin;
    const std::size_t len = row.k_end - row.k_begin;
    for (std::size_t k = 0; k < len; ++k) y[k] = y[k] + w * c[k];
  }
}

void quadratic_forms(std::span<const double> gram, std::size_t r,
                     std::span<const double> points, std::size_t m, std::span<double> out) {
  for (std::size_t p = 0; p < m; ++p) {
    double acc = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
      const double xi = points[i * m + p];
      for (std::size_t j = 0; j < r; ++j) acc = acc + (gram[i * r + j] * xi) * points[j * m + p];
    }
    out[p] = acc;
  }
}

}  // namespace carnot::kernels::scalar

#include "carnot/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define CARNOT_HAVE_AVX2_KERNELS 1
#define CARNOT_AVX2_TARGET __attribute__((target("avx2")))
#else
#define CARNOT_HAVE_AVX2_KERNELS 0
#endif

namespace carnot::kernels::avx2 {

#if CARNOT_HAVE_AVX2_KERNELS

CARNOT_AVX2_TARGET
void bracket_accumulate(std::span<const BracketRow> rows, std::span<const double> pool,
                        std::span<const double> a, std::span<const double> b,
                        std::span<double> out) {
  for (const BracketRow& row : rows) {
    const double w = a[row.i] * b[row.j] - a[row.j] * b[row.i];
    if (w == 0.0) continue;
    const double* c = pool.data() + row.offset;
    double* y = out.data() + row.k_begin;
    const std::size_t len = row.k_end - row.k_begin;
    const __m256d wv = _mm256_set1_pd(w);
    std::size_t k = 0;
    for (; k + 4 <= len; k += 4) {
      const __m256d prod = _mm256_mul_pd(wv, _mm256_loadu_pd(c + k));
      _mm256_storeu_pd(y + k, _mm256_add_pd(_mm256_loadu_pd(y + k), prod));
    }
    for (; k < len; ++k) y[k] = y[k] + w * c[k];
  }
}

CARNOT_AVX2_TARGET
void quadratic_forms(std::span<const double> gram, std::size_t r,
                     std::span<const double> points, std::size_t m, std::span<double> out) {
  std::size_t p = 0;
  for (; p + 4 <= m; p += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < r; ++i) {
      const __m256d xi = _mm256_loadu_pd(points.data() + i * m + p);
      for (std::size_t j = 0; j < r; ++j) {
        const __m256d gx = _mm256_mul_pd(_mm256_set1_pd(gram[i * r + j]), xi);
        const __m256d term = _mm256_mul_pd(gx, _mm256_loadu_pd(points.data() + j * m + p));
        acc = _mm256_add_pd(acc, term);
      }
    }
    _mm256_storeu_pd(out.data() + p, acc);
  }
  for (; p < m; ++p) {
    double acc = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
      const double xi = points[i * m + p];
      for (std::size_t j = 0; j < r; ++j) acc = acc + (gram[i * r + j] * xi) * points[j * m + p];
    }
    out[p] = acc;
  }
}

#else

void bracket_accumulate(std::span<const BracketRow> rows, std::span<const double> pool,
                        std::span<const double> a, std::span<const double> b,
                        std::span<double> out) {
  scalar::bracket_accumulate(rows, pool, a, b, out);
}

void quadratic_forms(std::span<const double> gram, std::size_t r,
                     std::span<const double> points, std::size_t m, std::span<double> out) {
  scalar::quadratic_forms(gram, r, points, m, out);
}

#endif

}  // namespace carnot::kernels::avx2

#pragma once

// Inner loops shared by the bracket and the excess search, in a scalar
// reference form and an AVX2 form selected at runtime. Both forms perform the
// same multiplies and adds in the same order (no FMA), so they agree bitwise.

#include <cstddef>
#include <cstdint>
#include <span>

namespace carnot::kernels {

// One nonzero row of structure constants: for the pair i < j the bracket
// [X_i, X_j] has coordinates pool[offset + (k - k_begin)] for k in [k_begin, k_end).
struct BracketRow {
  std::uint32_t i;
  std::uint32_t j;
  std::uint32_t k_begin;
  std::uint32_t k_end;
  std::uint32_t offset;
};

enum class Isa { Scalar, Avx2 };

const char* to_string(Isa isa);
bool avx2_available();

// Kernel set in use. Defaults to the best available; set_isa overrides it
// (a request for AVX2 on a machine without it falls back to scalar).
Isa active_isa();
void set_isa(Isa isa);

// out[k] += (a_i b_j - a_j b_i) * c_ijk over all rows.
void bracket_accumulate(std::span<const BracketRow> rows, std::span<const double> pool,
                        std::span<const double> a, std::span<const double> b,
                        std::span<double> out);

// For m points stored component-major (points[c * m + p]), out[p] = x^T G x
// with G an r x r row-major matrix.
void quadratic_forms(std::span<const double> gram, std::size_t r,
                     std::span<const double> points, std::size_t m, std::span<double> out);

namespace scalar {
void bracket_accumulate(std::span<const BracketRow> rows, std::span<const double> pool,
                        std::span<const double> a, std::span<const double> b,
                        std::span<double> out);
void quadratic_forms(std::span<const double> gram, std::size_t r,
                     std::span<const double> points, std::size_t m, std::span<double> out);
}  // namespace scalar

namespace avx2 {
void bracket_accumulate(std::span<const BracketRow> rows, std::span<const double> pool,
                        std::span<const double> a, std::span<const double> b,
                        std::span<double> out);
void quadratic_forms(std::span<const double> gram, std::size_t r,
                     std::span<const double> points, std::size_t m, std::span<double> out);
}  // namespace avx2

}  // namespace carnot::kernels

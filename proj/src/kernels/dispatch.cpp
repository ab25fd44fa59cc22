#include <atomic>

#include "carnot/kernels.hpp"

namespace carnot::kernels {

namespace {

Isa detect() { return avx2_available() ? Isa::Avx2 : Isa::Scalar; }

std::atomic<int>& selected() {
  static std::atomic<int> isa{static_cast<int>(detect())};
  return isa;
}

}  // namespace

const char* to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() { return static_cast<Isa>(selected().load(std::memory_order_relaxed)); }

void set_isa(Isa isa) {
  if (isa == Isa::Avx2 && !avx2_available()) isa = Isa::Scalar;
  selected().store(static_cast<int>(isa), std::memory_order_relaxed);
}

void bracket_accumulate(std::span<const BracketRow> rows, std::span<const double> pool,
                        std::span<const double> a, std::span<const double> b,
                        std::span<double> out) {
  if (active_isa() == Isa::Avx2)
    avx2::bracket_accumulate(rows, pool, a, b, out);
  else
    scalar::bracket_accumulate(rows, pool, a, b, out);
}

void quadratic_forms(std::span<const double> gram, std::size_t r,
                     std::span<const double> points, std::size_t m, std::span<double> out) {
  if (active_isa() == Isa::Avx2)
    avx2::quadratic_forms(gram, r, points, m, out);
  else
    scalar::quadratic_forms(gram, r, points, m, out);
}

}  // namespace carnot::kernels

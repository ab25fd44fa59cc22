#include <doctest.h>

#include <cstring>
#include <random>

#include "carnot/algebra.hpp"
#include "carnot/fixtures.hpp"
#include "carnot/kernels.hpp"

using namespace carnot;

namespace {

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

// Restores the kernel choice on scope exit.
struct IsaGuard {
  kernels::Isa saved = kernels::active_isa();
  ~IsaGuard() { kernels::set_isa(saved); }
};

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("quadratic forms: scalar and avx2 agree bitwise") {
    if (!kernels::avx2_available()) return;
    std::mt19937_64 rng(13);
    std::normal_distribution<double> n(0.0, 1.0);
    for (std::size_t r : {1u, 2u, 3u, 4u, 5u, 7u}) {
      for (std::size_t m : {1u, 3u, 4u, 5u, 17u, 1000u}) {
        std::vector<double> gram(r * r), pts(r * m), a(m), b(m);
        for (double& x : gram) x = n(rng);
        for (double& x : pts) x = n(rng);
        kernels::scalar::quadratic_forms(gram, r, pts, m, a);
        kernels::avx2::quadratic_forms(gram, r, pts, m, b);
        CHECK(bitwise_equal(a, b));
      }
    }
  }

  TEST_CASE("bracket: scalar and avx2 agree bitwise") {
    if (!kernels::avx2_available()) return;
    IsaGuard guard;
    std::mt19937_64 rng(17);
    for (const StratifiedAlgebra& alg :
         {heisenberg(1), heisenberg(4), engel(), free_nilpotent(2, 5), free_nilpotent(3, 3),
          free_nilpotent(4, 2)}) {
      for (int i = 0; i < 50; ++i) {
        const AlgebraVector a = fixtures::random_vector(alg, rng), b = fixtures::random_vector(alg, rng);
        kernels::set_isa(kernels::Isa::Scalar);
        const AlgebraVector s = alg.bracket(a, b);
        kernels::set_isa(kernels::Isa::Avx2);
        const AlgebraVector v = alg.bracket(a, b);
        CHECK(bitwise_equal(s.coords(), v.coords()));
      }
    }
  }

  TEST_CASE("quadratic forms against a direct sum") {
    const std::vector<double> gram{2.0, 0.5, 0.5, 1.0};
    const std::vector<double> pts{1.0, 0.0, 2.0, 0.0, 1.0, -1.0};  // points (1,0), (0,1), (2,-1)
    std::vector<double> out(3);
    kernels::quadratic_forms(gram, 2, pts, 3, out);
    CHECK(out == std::vector<double>{2.0, 1.0, 8.0 - 2.0 + 1.0});
  }
}

#include <doctest.h>

#include <random>

#include "carnot/fixtures.hpp"
#include "carnot/group.hpp"
#include "carnot/identity_suite.hpp"
#include "oracles.hpp"

using namespace carnot;

namespace {

double diff(const AlgebraVector& a, const AlgebraVector& b) { return (a - b).max_abs(); }

}  // namespace

TEST_SUITE("group") {
  TEST_CASE("bch word coefficients through degree 4") {
    const std::vector<BchTerm> t = bch_terms(4);
    auto coeff = [&](const std::string& w) {
      for (const BchTerm& x : t)
        if (x.word == w) return x.coefficient.value();
      return 0.0;
    };
    CHECK(coeff("X") == 1.0);
    CHECK(coeff("Y") == 1.0);
    // [X,Y] and [Y,X] may both appear; only the antisymmetric sum matters.
    CHECK(coeff("XY") - coeff("YX") == 0.5);
    CHECK(coeff("XX") == 0.0);
    // Degree 3: 1/12 [X,[X,Y]] - 1/12 [Y,[X,Y]].
    CHECK(coeff("XXY") - coeff("XYX") == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
    CHECK(coeff("YXY") - coeff("YYX") == doctest::Approx(-1.0 / 12.0).epsilon(1e-15));
  }

  TEST_CASE("bch agrees with exp/log in the free associative algebra") {
    // The oracle computes log(exp X exp Y) as a noncommutative series and
    // evaluates it through the Dynkin map; the library sums bracket words.
    for (const GroupPtr& g :
         {CarnotGroup::make(heisenberg(1)), CarnotGroup::make(engel()),
          CarnotGroup::make(free_nilpotent(2, 3)), CarnotGroup::make(free_nilpotent(3, 2)),
          CarnotGroup::make(free_nilpotent(2, 5)), CarnotGroup::make(free_nilpotent(3, 4))}) {
      const StratifiedAlgebra& alg = g->algebra();
      const oracle::Poly series = oracle::bch_series(alg.step());
      std::mt19937_64 rng(11);
      double worst = 0.0;
      for (int i = 0; i < 50; ++i) {
        const AlgebraVector x = fixtures::random_vector(alg, rng), y = fixtures::random_vector(alg, rng);
        worst = std::max(worst, diff(g->bch(x, y), oracle::dynkin_eval(series, alg, x, y)));
      }
      CAPTURE(alg.name());
      CHECK(worst <= 1e-12);
    }
  }

  TEST_CASE("step-2 closed form and heisenberg product") {
    for (const GroupPtr& g : {CarnotGroup::make(heisenberg(1)), CarnotGroup::make(heisenberg(2)),
                              CarnotGroup::make(free_nilpotent(3, 2))}) {
      const StratifiedAlgebra& alg = g->algebra();
      std::mt19937_64 rng(5);
      for (int i = 0; i < 100; ++i) {
        const AlgebraVector x = fixtures::random_vector(alg, rng), y = fixtures::random_vector(alg, rng);
        CHECK(diff(g->bch(x, y), x + y + 0.5 * alg.bracket(x, y)) <= 1e-12);
      }
    }
    const GroupPtr h = CarnotGroup::make(heisenberg(1));
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
      const double x = u(rng), y = u(rng), z = u(rng), x2 = u(rng), y2 = u(rng), z2 = u(rng);
      const GroupElement p = h->product({{x, y, z}}, {{x2, y2, z2}});
      CHECK(diff(p.log, {x + x2, y + y2, z + z2 + 0.5 * (x * y2 - y * x2)}) <= 1e-12);
    }
  }

  TEST_CASE("inverse, conjugation, commutator examples") {
    const GroupPtr h = CarnotGroup::make(heisenberg(1));
    const GroupElement g{{0.3, -0.7, 1.1}};
    CHECK(diff(h->product(g, h->inverse(g)).log, h->identity().log) == 0.0);
    // Central h is fixed by conjugation.
    CHECK(diff(h->conjugate(g, {{0, 0, 2.5}}).log, {0, 0, 2.5}) <= 1e-15);
    CHECK(diff(h->conjugate({{1, 0, 0}}, {{0, 1, 0}}).log, {0, 1, 1}) <= 1e-15);
    CHECK(diff(h->commutator(g, g).log, h->identity().log) <= 1e-15);
    CHECK(diff(h->commutator({{1.5, 0, 0}}, {{0, -2.0, 0}}).log, {0, 0, -3.0}) <= 1e-15);
    CHECK(h->pi({{1, 1, 0.5}}) == std::vector<double>{1, 1});
  }

  TEST_CASE("free(2,3) projection identities") {
    const GroupPtr g = CarnotGroup::make(free_nilpotent(2, 3));
    const StratifiedAlgebra& alg = g->algebra();
    std::mt19937_64 rng(21);
    for (int i = 0; i < 1000; ++i) {
      const GroupElement x = g->exp(fixtures::random_vector(alg, rng));
      const GroupElement y = g->exp(fixtures::random_vector(alg, rng));
      const GroupElement h2 = g->exp(fixtures::random_vector(alg, rng, 1.0, 2, 3));
      const std::vector<double> pxy = g->pi(g->product(x, y)), px = g->pi(x), py = g->pi(y);
      for (std::size_t k = 0; k < pxy.size(); ++k) CHECK(std::abs(pxy[k] - px[k] - py[k]) <= 1e-12);
      CHECK(diff(g->pi_layer(2, g->conjugate(x, h2)), g->pi_layer(2, h2)) <= 1e-10);
      const AlgebraVector expect = alg.bracket(alg.project(1, x.log), alg.project(2, h2.log));
      CHECK(diff(g->pi_layer(3, g->commutator(x, h2)), expect) <= 1e-10);
    }
  }

  TEST_CASE("homogeneous norm") {
    const GroupPtr h = CarnotGroup::make(heisenberg(1));
    CHECK(h->homogeneous_norm(h->identity()) == 0.0);
    CHECK(h->homogeneous_norm({{0, 0, 4}}) == 2.0);
    const GroupPtr e = CarnotGroup::make(engel());
    std::mt19937_64 rng(2);
    for (int i = 0; i < 20; ++i) {
      const GroupElement x = e->exp(fixtures::random_vector(e->algebra(), rng));
      CHECK(e->homogeneous_norm(e->dilate(3.0, x)) == doctest::Approx(3.0 * e->homogeneous_norm(x)).epsilon(1e-14));
    }
  }

  TEST_CASE("associativity") {
    for (const GroupPtr& g : suite_groups()) CHECK(associativity_residual(g, 200, 4) <= 1e-10);
  }
}

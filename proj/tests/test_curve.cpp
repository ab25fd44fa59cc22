#include <doctest.h>

#include <cmath>
#include <random>

#include "carnot/curve.hpp"
#include "carnot/errors.hpp"
#include "carnot/fixtures.hpp"

using namespace carnot;

namespace {

double diff(const AlgebraVector& a, const AlgebraVector& b) { return (a - b).max_abs(); }

GroupPtr h1() { return CarnotGroup::make(heisenberg(1)); }

}  // namespace

TEST_SUITE("curve") {
  TEST_CASE("lift of constant control is a line") {
    const GroupPtr g = h1();
    const std::vector<double> v{0.6, 0.8};
    const HorizontalPath p = fixtures::line(g, v, 3.0);
    for (double t : {0.0, 0.5, 1.7, 3.0})
      CHECK(diff(p.eval(t).log, {0.6 * t, 0.8 * t, 0.0}) <= 1e-15);
    CHECK(p.is_arclength());
    CHECK(p.length() == doctest::Approx(3.0).epsilon(1e-15));
  }

  TEST_CASE("corner endpoint and increments") {
    const GroupPtr g = h1();
    const HorizontalPath c = fixtures::corner(g);
    CHECK(diff(c.endpoint().log, {1, 1, 0.5}) == 0.0);
    CHECK(diff(c.increment(0, 2).log, {1, 1, 0.5}) <= 1e-15);
    CHECK(diff(c.increment(1.3, 1.3).log, g->identity().log) == 0.0);
    const std::vector<double> x{1, 0}, y{0, 1};
    const HorizontalPath sx = HorizontalPath::segment(g, x, 1.0), sy = HorizontalPath::segment(g, y, 1.0);
    CHECK(diff(concat(sx, sy).endpoint().log, {1, 1, 0.5}) == 0.0);
    // Commutator path ends at exp(Z).
    const HorizontalPath comm = concat(concat(concat(sx, sy), reverse(sx)), reverse(sy));
    CHECK(diff(comm.endpoint().log, {0, 0, 1}) <= 1e-15);
  }

  TEST_CASE("translation invariance of increments") {
    const GroupPtr g = CarnotGroup::make(engel());
    std::mt19937_64 rng(4);
    const HorizontalPath p = fixtures::random_arclength(g, 8, rng);
    const GroupElement x = g->exp(fixtures::random_vector(g->algebra(), rng));
    const HorizontalPath q = p.translate(x);
    for (int i = 0; i < 20; ++i) {
      const double s = p.a() + p.duration() * i / 20.0, t = p.b() - p.duration() * i / 40.0;
      CHECK(diff(p.increment(s, t).log, q.increment(s, t).log) <= 1e-12);
    }
  }

  TEST_CASE("concatenation and reversal") {
    const GroupPtr g = CarnotGroup::make(free_nilpotent(2, 3));
    std::mt19937_64 rng(8);
    const HorizontalPath a = fixtures::random_arclength(g, 3, rng), b = fixtures::random_arclength(g, 4, rng),
                         c = fixtures::random_arclength(g, 2, rng);
    CHECK(concat(concat(a, b), c).pieces() == concat(a, concat(b, c)).pieces());
    const HorizontalPath e = HorizontalPath::empty(g, g->identity());
    CHECK(concat(a, e).pieces() == a.pieces());
    CHECK(concat(e, a).pieces() == a.pieces());
    CHECK(reverse(reverse(a)).pieces() == a.pieces());
    // Reverse of a line exp(tv) is exp((T - t)v) from its endpoint.
    const std::vector<double> v{0.0, 1.0};
    const HorizontalPath l = fixtures::line(g, v, 2.0);
    const HorizontalPath r = reverse(l);
    for (double t : {0.0, 0.5, 2.0}) CHECK(diff(r.eval(t).log, l.eval(2.0 - t).log) <= 1e-15);
  }

  TEST_CASE("eval consistency and restriction") {
    const GroupPtr g = CarnotGroup::make(free_nilpotent(3, 3));
    std::mt19937_64 rng(12);
    const HorizontalPath p = fixtures::random_arclength(g, 10, rng, -1.5);
    CHECK(diff(p.endpoint().log, p.fold_endpoint().log) <= 1e-12);
    const double s = p.a() + 0.3 * p.duration(), t = p.a() + 0.8 * p.duration();
    const HorizontalPath q = p.restrict(s, t);
    CHECK(q.a() == s);
    CHECK(diff(q.endpoint().log, p.eval(t).log) <= 1e-12);
    CHECK(q.length() == doctest::Approx(t - s).epsilon(1e-12));
    CHECK_THROWS_AS(p.eval(p.b() + 1.0), Error);
  }

  TEST_CASE("lipschitz constant of arclength paths is measured") {
    const GroupPtr g = CarnotGroup::make(engel());
    std::mt19937_64 rng(6);
    const HorizontalPath p = fixtures::random_arclength(g, 6, rng);
    const double c = measured_lipschitz(p, 64);
    CHECK(c >= 1.0 - 1e-9);
    CHECK(std::isfinite(c));
  }

  TEST_CASE("dilation and reparametrization") {
    const GroupPtr g = h1();
    const HorizontalPath c = fixtures::corner(g);
    const HorizontalPath d = c.dilate_reparam(2.0);
    CHECK(d.b() == 4.0);
    CHECK(diff(d.endpoint().log, g->dilate(2.0, c.endpoint()).log) <= 1e-15);
    CHECK(d.length() == 2.0 * c.length());
  }

  TEST_CASE("malformed input") {
    const GroupPtr g = h1();
    CHECK_THROWS_AS(HorizontalPath(g, g->identity(), {{0.0, {1, 0}}}), Error);
    CHECK_THROWS_AS(HorizontalPath(g, g->identity(), {{1.0, {1, 0, 0}}}), Error);
    CHECK_THROWS_AS(HorizontalPath::lift(g, g->identity(), {{1.0, AlgebraVector{1, 0, 1}}}), Error);
  }
}

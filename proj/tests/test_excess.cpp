#include <doctest.h>

#include <cmath>
#include <random>

#include "carnot/errors.hpp"
#include "carnot/excess.hpp"
#include "carnot/fixtures.hpp"
#include "carnot/linalg.hpp"

using namespace carnot;

TEST_SUITE("excess") {
  TEST_CASE("corner over [0,2]") {
    const GroupPtr g = CarnotGroup::make(heisenberg(1));
    const ExcessReport r = excess(fixtures::corner(g), 0.0, 2.0);
    CHECK(r.gram(0, 0) == 0.5);
    CHECK(r.gram(1, 1) == 0.5);
    CHECK(r.gram(0, 1) == 0.0);
    CHECK(std::abs(r.value - 1.0 / std::sqrt(2.0)) <= 1e-12);
    CHECK(std::abs(excess_by_mesh(r.gram).value - r.value) <= 1e-6);
  }

  TEST_CASE("lines and hyperplanes give zero") {
    const GroupPtr g = CarnotGroup::make(heisenberg(1));
    const std::vector<double> v{0.6, 0.8};
    const ExcessReport r = excess(fixtures::line(g, v, 2.0), 0.0, 2.0);
    CHECK(r.value == 0.0);
    CHECK(std::abs(r.minimizer[0] * v[0] + r.minimizer[1] * v[1]) <= 1e-15);
    // Rank 3: controls e1 then e2 are annihilated by e3.
    const GroupPtr f = CarnotGroup::make(free_nilpotent(3, 2));
    const HorizontalPath c(f, f->identity(), {{1.0, {1, 0, 0}}, {1.0, {0, 1, 0}}});
    CHECK(excess(c, 0.0, 2.0).value == 0.0);
  }

  TEST_CASE("eigen and mesh routes agree on random grams") {
    std::mt19937_64 rng(23);
    for (const GroupPtr& g : {CarnotGroup::make(heisenberg(1)), CarnotGroup::make(free_nilpotent(3, 2)),
                              CarnotGroup::make(heisenberg(2))}) {
      for (int i = 0; i < 10; ++i) {
        const HorizontalPath p = fixtures::random_arclength(g, 5, rng);
        const ExcessReport r = excess(p, p.a(), p.b());
        CHECK(std::abs(excess_by_mesh(r.gram).value - r.value) <= 1e-6);
      }
    }
  }

  TEST_CASE("scaling identities") {
    const GroupPtr g = CarnotGroup::make(engel());
    std::mt19937_64 rng(31);
    for (int i = 0; i < 20; ++i) {
      const HorizontalPath p = fixtures::random_arclength(g, 6, rng);
      const GroupElement x = g->exp(fixtures::random_vector(g->algebra(), rng));
      const Window w{{p.a() + 0.1 * p.duration(), p.a() + 0.4 * p.duration()},
                     {p.a() + 0.5 * p.duration(), p.b()}};
      CHECK(excess_scaling_check(p, w, 1.0, g->identity()).max() <= 1e-12);
      CHECK(excess_scaling_check(p, w, 2.5, x).max() <= 1e-10);
    }
    const HorizontalPath c = fixtures::corner(CarnotGroup::make(heisenberg(1)));
    CHECK(std::abs(excess(c.dilate_reparam(2.0), 0.0, 4.0).value - 1.0 / std::sqrt(2.0)) <= 1e-12);
  }

  TEST_CASE("interval selection") {
    const GroupPtr g = CarnotGroup::make(heisenberg(1));
    const IntervalSelection s = select_intervals(fixtures::corner(g), 0.0, 2.0);
    REQUIRE(s.intervals.size() == 2);
    CHECK(s.intervals[0] == std::pair{0.0, 1.0});
    CHECK(s.intervals[1] == std::pair{1.0, 2.0});
    CHECK(s.det == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.c_meas == doctest::Approx(0.25).epsilon(1e-14));
    const std::vector<double> v{1, 0};
    try {
      select_intervals(fixtures::line(g, v, 1.0), 0.0, 1.0);
      FAIL("expected DegenerateDirections");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DegenerateDirections);
    }
    const HorizontalPath circle = fixtures::circle_lift(g, 256);
    const IntervalSelection cs = select_intervals(circle, circle.a(), circle.b());
    CHECK(cs.det > 0.0);
    CHECK(cs.lower_bound_ok);
    // Intervals are ordered and disjoint.
    CHECK(cs.intervals[0].second <= cs.intervals[1].first);
  }

  TEST_CASE("interval selection in rank 3 against brute force on a coarse grid") {
    const GroupPtr g = CarnotGroup::make(free_nilpotent(3, 2));
    std::mt19937_64 rng(41);
    const HorizontalPath p = fixtures::random_arclength(g, 5, rng);
    const int depth = 3;
    const IntervalSelection s = select_intervals(p, p.a(), p.b(), depth);
    // Exhaustive oracle over all ordered disjoint triples on the same grid.
    const int n = 1 << depth;
    auto at = [&](int i) { return p.a() + p.duration() * i / n; };
    double best = 0.0;
    for (int a0 = 0; a0 <= n; ++a0)
      for (int a1 = a0 + 1; a1 <= n; ++a1)
        for (int b0 = a1; b0 <= n; ++b0)
          for (int b1 = b0 + 1; b1 <= n; ++b1)
            for (int c0 = b1; c0 <= n; ++c0)
              for (int c1 = c0 + 1; c1 <= n; ++c1) {
                const std::vector<double> d0 = g->pi(p.increment(at(a0), at(a1))),
                                          d1 = g->pi(p.increment(at(b0), at(b1))),
                                          d2 = g->pi(p.increment(at(c0), at(c1)));
                const double det = d0[0] * (d1[1] * d2[2] - d1[2] * d2[1]) -
                                   d0[1] * (d1[0] * d2[2] - d1[2] * d2[0]) +
                                   d0[2] * (d1[0] * d2[1] - d1[1] * d2[0]);
                best = std::max(best, std::abs(det));
              }
    // Coordinate ascent can only improve on the grid optimum.
    CHECK(s.det >= best * (1.0 - 1e-12));
  }

  TEST_CASE("singular value route") {
    // Agrees with the Gram eigenvalue when well conditioned.
    std::mt19937_64 rng(37);
    std::normal_distribution<double> n01(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
      linalg::Matrix f(6, 3);
      for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = 0; b < 3; ++b) f(a, b) = n01(rng);
      const double sv = linalg::smallest_singular(f).value;
      const double ev = linalg::smallest_eigen(f.transpose() * f).value;
      CHECK(std::abs(sv * sv - ev) <= 1e-12 * std::max(1.0, ev));
    }
    // Three pieces in rank 4 span a hyperplane: excess at rounding size, not its root.
    const GroupPtr g = CarnotGroup::make(heisenberg(2));
    const HorizontalPath p = fixtures::random_arclength(g, 3, rng);
    const double e = excess(p, p.a(), p.b()).value;
    CHECK(e <= 1e-14);
    CHECK(std::abs(excess(p.dilate(4.0), p.a(), p.b()).value - 4.0 * e) <= 1e-14);
  }
}

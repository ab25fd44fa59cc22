#include <doctest.h>

#include <cmath>
#include <random>

#include "carnot/excess.hpp"
#include "carnot/fixtures.hpp"
#include "carnot/surgery.hpp"

using namespace carnot;

namespace {

double diff(const AlgebraVector& a, const AlgebraVector& b) { return (a - b).max_abs(); }

}  // namespace

TEST_SUITE("surgery") {
  TEST_CASE("cut of a segment is the segment") {
    const GroupPtr g = CarnotGroup::make(heisenberg(1));
    const std::vector<double> v{0.6, 0.8};
    const HorizontalPath l = fixtures::line(g, v, 2.0);
    const HorizontalPath c = cut(l, 0.5, 1.25);
    CHECK(c.length() == doctest::Approx(l.length()).epsilon(1e-15));
    CHECK(diff(c.endpoint().log, l.endpoint().log) <= 1e-15);
    CHECK(cut_gain_bound(l, 0.5, 1.25).gain == doctest::Approx(0.0).epsilon(1e-15));
  }

  TEST_CASE("corner cut gains") {
    const GroupPtr g = CarnotGroup::make(heisenberg(1));
    const HorizontalPath c = fixtures::corner(g);
    const double eta = 0.5;
    const HorizontalPath k = cut(c, 1.0 - eta, 1.0 + eta);
    CHECK(std::abs(c.length() - k.length() - (2.0 - std::sqrt(2.0)) * eta) <= 1e-15);
    const CutGain full = cut_gain_bound(c, 0.0, 2.0);
    CHECK(std::abs(full.gain - (2.0 - std::sqrt(2.0))) <= 1e-15);
    CHECK(std::abs(full.bound - 0.5) <= 1e-15);
    CHECK(full.holds(0.0));
    // Symmetric variant: same gain, midpoint of the new domain exactly 0.
    const HorizontalPath ks = cut_sym(c, 1.0 - eta, 1.0 + eta);
    CHECK(ks.length() == doctest::Approx(k.length()).epsilon(1e-15));
    CHECK(0.5 * (ks.a() + ks.b()) == 0.0);
  }

  TEST_CASE("cuts keep the projection of the endpoint") {
    const GroupPtr g = CarnotGroup::make(free_nilpotent(2, 3));
    std::mt19937_64 rng(51);
    for (int i = 0; i < 1000; ++i) {
      const HorizontalPath p = fixtures::random_arclength(g, 5, rng);
      std::uniform_real_distribution<double> u(p.a(), p.b());
      double s = u(rng), t = u(rng);
      if (s > t) std::swap(s, t);
      const std::vector<double> a = g->pi(p.endpoint()), b = g->pi(cut(p, s, t).endpoint());
      CHECK(std::abs(a[0] - b[0]) <= 1e-12);
      CHECK(std::abs(a[1] - b[1]) <= 1e-12);
    }
  }

  TEST_CASE("connector examples") {
    const GroupPtr h = CarnotGroup::make(heisenberg(1));
    const Connector seg = connect_to(h, {0.3, -0.4, 0.0});
    CHECK(seg.length == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(seg.residual.max_abs() == 0.0);
    for (double c : {0.01, 0.25, 1.0, 7.0}) {
      const Connector z = connect_to(h, {0, 0, c});
      CHECK(std::abs(z.length - 4.0 * std::sqrt(c)) <= 1e-12);
      CHECK(z.residual.max_abs() <= 1e-15);
    }
    const Connector none = connect_to(h, h->algebra().zero());
    CHECK(none.path.empty());

    const GroupPtr f = CarnotGroup::make(free_nilpotent(2, 3));
    std::mt19937_64 rng(61);
    for (int i = 0; i < 50; ++i) {
      const AlgebraVector y = fixtures::random_vector(f->algebra(), rng, 1.0, 3, 3);
      const Connector c1 = connect_to(f, y);
      CHECK(c1.residual.max_abs() <= 1e-9);
      for (double lam : {2.0, 3.0}) {
        const Connector cl = connect_to(f, f->algebra().dilate(lam, y));
        CHECK(std::abs(cl.length / c1.length - lam) <= 1e-10);
      }
    }
  }

  TEST_CASE("commutator split reconstructs") {
    const StratifiedAlgebra f = free_nilpotent(3, 3);
    std::mt19937_64 rng(71);
    for (int layer = 2; layer <= 3; ++layer)
      for (int i = 0; i < 20; ++i) {
        const AlgebraVector w = fixtures::random_vector(f, rng, 1.0, layer, layer);
        const std::vector<AlgebraVector> ws = commutator_split(f, w, layer);
        AlgebraVector sum = f.zero();
        for (std::size_t m = 0; m < ws.size(); ++m) sum += f.bracket(f.basis(m), ws[m]);
        CHECK(diff(sum, w) <= 1e-12);
      }
  }

  TEST_CASE("displacement on a line") {
    const GroupPtr h = CarnotGroup::make(heisenberg(1));
    const std::vector<double> x{1, 0};
    const HorizontalPath l = fixtures::line(h, x, 1.0);
    const double eps = 0.3;
    const DisplacementCheck d = displacement(l, 0.0, 1.0, AlgebraVector{0, eps, 0});
    CHECK(diff(d.direct.value.log, {0, 0, -eps}) <= 1e-15);
    CHECK(d.agreement <= 1e-15);
    CHECK(d.direct.lowest_layer == 2);
    const DisplacementCheck zero = displacement(l, 0.0, 1.0, h->algebra().zero());
    CHECK(zero.direct.value.log.max_abs() == 0.0);
    // Length bookkeeping: two connector copies.
    const Connector c = connect_to(h, {0, eps, 0});
    CHECK(std::abs(dev(l, 0.2, 0.7, c).length() - l.length() - 2.0 * c.length) <= 1e-12);
    // Y in the center next to a vanishing increment.
    const DisplacementCheck flat = displacement(l, 0.5, 0.5, AlgebraVector{0, 1, 0});
    CHECK(flat.direct.value.log.max_abs() <= 1e-15);
  }

  TEST_CASE("iterated devices sum their displacements") {
    const GroupPtr h = CarnotGroup::make(heisenberg(1));
    const std::vector<double> x{1, 0};
    const HorizontalPath l = fixtures::line(h, x, 2.0);
    const double alpha = 0.2, beta = -0.45;
    const std::vector<Device> dv{{0.0, 1.0, {0, alpha, 0}}, {1.0, 2.0, {0, beta, 0}}};
    const IteratedResult r = dev_iter(l, dv);
    CHECK(diff(r.displacement.value.log, {0, 0, -(alpha + beta)}) <= 1e-14);
    const IteratedResult rs = dev_iter_sym(recenter(l), {{-1.0, 0.0, {0, alpha, 0}}, {0.0, 1.0, {0, beta, 0}}});
    CHECK(diff(rs.displacement.value.log, {0, 0, -(alpha + beta)}) <= 1e-14);
    CHECK(0.5 * (rs.path.a() + rs.path.b()) == 0.0);
  }

  TEST_CASE("dev_sym with zero is recentering") {
    const GroupPtr h = CarnotGroup::make(engel());
    std::mt19937_64 rng(81);
    const HorizontalPath p = fixtures::random_arclength(h, 4, rng, 3.0);
    const HorizontalPath q = dev_sym(p, 3.5, 4.0, connect_to(h, h->algebra().zero()));
    CHECK(q.a() == -0.5 * p.duration());
    CHECK(q.duration() == doctest::Approx(p.duration()).epsilon(1e-15));
    for (double u : {0.0, 0.3, 0.77, 1.0}) {
      const double t = p.a() + u * p.duration(), tq = q.a() + u * q.duration();
      CHECK(diff(q.eval(tq).log, p.eval(t).log) <= 1e-12);
    }
  }
}

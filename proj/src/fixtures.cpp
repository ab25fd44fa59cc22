#include "carnot/fixtures.hpp"

#include <cmath>
#include <numbers>

#include "carnot/errors.hpp"
#include "carnot/linalg.hpp"

namespace carnot::fixtures {

namespace {

std::vector<double> unit(std::size_t r, std::size_t i, double sign = 1.0) {
  std::vector<double> v(r, 0.0);
  v[i] = sign;
  return v;
}

}  // namespace

HorizontalPath line(GroupPtr g, std::span<const double> v, double T, double a) {
  GroupElement id = g->identity();
  return HorizontalPath(std::move(g), std::move(id), {{T, std::vector<double>(v.begin(), v.end())}},
                        a);
}

HorizontalPath corner(GroupPtr g, double a) {
  require(g->rank() >= 2, ErrorKind::InvalidArgument, "corner needs rank >= 2");
  const std::size_t r = g->rank();
  GroupElement id = g->identity();
  return HorizontalPath(std::move(g), std::move(id), {{1.0, unit(r, 0)}, {1.0, unit(r, 1)}}, a);
}

HorizontalPath circle_lift(GroupPtr g, int pieces) {
  require(g->rank() == 2, ErrorKind::InvalidArgument, "circle_lift needs rank 2");
  require(pieces >= 2 && pieces % 2 == 0, ErrorKind::InvalidArgument,
          "circle_lift needs an even piece count");
  const double pi = std::numbers::pi;
  const double h = 2.0 * pi / pieces;
  std::vector<Piece> out;
  out.reserve(static_cast<std::size_t>(pieces));
  for (int k = 0; k < pieces; ++k) {
    // Midpoint angle, written symmetrically so the law is odd/even about 0.
    const double mid = (k - pieces / 2 + 0.5) * h;
    out.push_back({h, {std::cos(mid), std::sin(mid)}});
  }
  GroupElement id = g->identity();
  return HorizontalPath(std::move(g), std::move(id), std::move(out), -pi);
}

HorizontalPath zigzag(GroupPtr g) {
  require(g->rank() >= 2, ErrorKind::InvalidArgument, "zigzag needs rank >= 2");
  const std::size_t r = g->rank();
  GroupElement id = g->identity();
  return HorizontalPath(
      std::move(g), std::move(id),
      {{1.0, unit(r, 0)}, {1.0, unit(r, 1)}, {1.0, unit(r, 0, -1.0)}, {1.0, unit(r, 1)}}, -2.0);
}

HorizontalPath dyadic_zigzag(GroupPtr g, int levels) {
  require(g->rank() >= 2, ErrorKind::InvalidArgument, "dyadic_zigzag needs rank >= 2");
  require(levels >= 1 && levels <= 50, ErrorKind::InvalidArgument, "dyadic_zigzag: levels");
  const std::size_t r = g->rank();
  std::vector<Piece> out;
  // Innermost piece first; piece m (m = levels-1 .. 0) covers [2^-(m+1), 2^-m].
  out.push_back({std::ldexp(1.0, -levels), unit(r, static_cast<std::size_t>(levels % 2))});
  for (int m = levels - 1; m >= 0; --m)
    out.push_back({std::ldexp(1.0, -(m + 1)), unit(r, static_cast<std::size_t>(m % 2))});
  GroupElement id = g->identity();
  return HorizontalPath(std::move(g), std::move(id), std::move(out), 0.0);
}

HorizontalPath random_arclength(GroupPtr g, int pieces, std::mt19937_64& rng, double a) {
  const std::size_t r = g->rank();
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> dur(0.05, 1.0);
  std::vector<Piece> out;
  for (int k = 0; k < pieces; ++k) {
    std::vector<double> v(r);
    double n = 0.0;
    while (n < 1e-3) {
      for (double& x : v) x = gauss(rng);
      n = linalg::norm(v);
    }
    for (double& x : v) x /= n;
    out.push_back({dur(rng), std::move(v)});
  }
  GroupElement id = g->identity();
  return HorizontalPath(std::move(g), std::move(id), std::move(out), a);
}

AlgebraVector random_vector(const StratifiedAlgebra& alg, std::mt19937_64& rng, double scale,
                            int first_layer, int last_layer) {
  if (last_layer <= 0) last_layer = alg.step();
  std::uniform_real_distribution<double> u(-scale, scale);
  AlgebraVector v = alg.zero();
  for (int j = first_layer; j <= last_layer; ++j)
    for (std::size_t k = alg.layer_begin(j); k < alg.layer_end(j); ++k) v[k] = u(rng);
  return v;
}

HorizontalPath by_name(const std::string& name, GroupPtr g) {
  if (name == "line") {
    const std::vector<double> v = unit(g->rank(), 0);
    return line(std::move(g), v, 2.0);
  }
  if (name == "corner") return corner(std::move(g));
  if (name == "corner_centered") return corner(std::move(g), -1.0);
  if (name == "circle_lift") return circle_lift(std::move(g));
  if (name == "zigzag") return zigzag(std::move(g));
  if (name == "dyadic_zigzag") return dyadic_zigzag(std::move(g));
  fail(ErrorKind::InvalidArgument, "unknown fixture: " + name);
}

}  // namespace carnot::fixtures

#include "carnot/surgery.hpp"

#include <algorithm>
#include <cmath>

#include "carnot/errors.hpp"
#include "carnot/excess.hpp"
#include "carnot/linalg.hpp"

namespace carnot {

namespace {

void check_interval(const HorizontalPath& p, double s, double t, const char* what) {
  const double slack = 1e-12 * std::max({1.0, std::abs(p.a()), std::abs(p.b())});
  if (!(s <= t && s >= p.a() - slack && t <= p.b() + slack))
    fail(ErrorKind::OutOfDomain, std::string(what) + ": interval [" + std::to_string(s) + ", " +
                                     std::to_string(t) + "] outside the domain");
}

constexpr double kLayerTol = 1e-12;

}  // namespace

HorizontalPath recenter(const HorizontalPath& p) {
  return HorizontalPath(p.group(), p.start(), p.pieces(), -p.duration() / 2.0);
}

HorizontalPath cut(const HorizontalPath& p, double s, double t) {
  check_interval(p, s, t, "cut");
  require(s < t, ErrorKind::InvalidArgument, "cut: s < s' required");
  std::vector<double> delta = p.projection(t);
  const std::vector<double> ps = p.projection(s);
  for (std::size_t i = 0; i < delta.size(); ++i) delta[i] -= ps[i];
  const double n = linalg::norm(delta);

  HorizontalPath out = p.restrict(p.a(), s);
  if (n > 0.0) {
    for (double& x : delta) x /= n;
    out = concat(out, HorizontalPath::segment(p.group(), delta, n));
  }
  return concat(out, p.restrict(t, p.b()));
}

HorizontalPath cut_sym(const HorizontalPath& p, double s, double t) { return recenter(cut(p, s, t)); }

CutGain cut_gain_bound(const HorizontalPath& p, double s, double t) {
  require(s < t, ErrorKind::InvalidArgument, "cut_gain_bound: positive interval required");
  // Exc^2 is the smallest Gram eigenvalue; squaring the rounded root would add an ulp.
  const double e2 = std::max(linalg::smallest_eigen(control_gram(p, {{s, t}})).value, 0.0);
  return {p.length() - cut(p, s, t).length(), 0.5 * (t - s) * e2};
}

HorizontalPath dev(const HorizontalPath& p, double s, double t, const Connector& c) {
  check_interval(p, s, t, "dev");
  HorizontalPath out = p.restrict(p.a(), s);
  out = concat(out, c.path);
  out = concat(out, p.restrict(s, t));
  out = concat(out, reverse(c.path));
  return concat(out, p.restrict(t, p.b()));
}

HorizontalPath dev(const HorizontalPath& p, double s, double t, const AlgebraVector& y) {
  return dev(p, s, t, connect_to(p.group(), y));
}

HorizontalPath dev_sym(const HorizontalPath& p, double s, double t, const Connector& c) {
  return recenter(dev(p, s, t, c));
}

DisplacementCheck displacement(const HorizontalPath& p, double s, double t, const Connector& c) {
  const GroupPtr& g = p.group();
  const HorizontalPath moved = dev(p, s, t, c);
  DisplacementCheck out;
  out.direct.value = g->product(g->inverse(p.endpoint()), moved.endpoint());
  out.direct.lowest_layer = g->algebra().lowest_layer(out.direct.value.log, kLayerTol);
  const GroupElement comm = g->commutator(g->exp(c.target), p.increment(s, t));
  out.formula = g->conjugate(p.increment(p.b(), s), comm);
  out.agreement = (out.direct.value.log - out.formula.log).max_abs();
  return out;
}

DisplacementCheck displacement(const HorizontalPath& p, double s, double t,
                               const AlgebraVector& y) {
  return displacement(p, s, t, connect_to(p.group(), y));
}

namespace {

IteratedResult iterate(const HorizontalPath& p, const std::vector<Device>& devices, bool sym) {
  for (std::size_t i = 0; i < devices.size(); ++i) {
    check_interval(p, devices[i].s, devices[i].t, "dev_iter");
    if (i > 0)
      require(devices[i - 1].t <= devices[i].s, ErrorKind::InvalidArgument,
              "dev_iter: intervals must be ordered and non-overlapping");
  }
  const GroupPtr& g = p.group();
  IteratedResult out;
  out.path = sym ? recenter(p) : p;
  // Time offset from the original curve to the current one for times at or
  // after the last processed interval.
  double offset = out.path.a() - p.a();
  for (const Device& d : devices) {
    const Connector c = connect_to(g, d.y);
    HorizontalPath next = dev(out.path, d.s + offset, d.t + offset, c);
    double shift = 2.0 * c.length;
    if (sym) {
      const HorizontalPath centered = recenter(next);
      shift += centered.a() - next.a();
      next = centered;
    }
    offset += shift;
    out.path = std::move(next);
    out.connector_lengths.push_back(c.length);
  }
  out.displacement.value = g->product(g->inverse(p.endpoint()), out.path.endpoint());
  out.displacement.lowest_layer = g->algebra().lowest_layer(out.displacement.value.log, kLayerTol);
  return out;
}

}  // namespace

IteratedResult dev_iter(const HorizontalPath& p, const std::vector<Device>& devices) {
  return iterate(p, devices, false);
}

IteratedResult dev_iter_sym(const HorizontalPath& p, const std::vector<Device>& devices) {
  return iterate(p, devices, true);
}

}  // namespace carnot

#include <cmath>

#include "carnot/errors.hpp"
#include "carnot/linalg.hpp"
#include "carnot/surgery.hpp"

namespace carnot {

std::vector<AlgebraVector> commutator_split(const StratifiedAlgebra& alg, const AlgebraVector& w,
                                            int layer) {
  require(layer >= 2 && layer <= alg.step(), ErrorKind::InvalidArgument,
          "commutator_split: layer in [2, s]");
  const std::size_t r = alg.rank();
  const std::size_t lo = alg.layer_begin(layer - 1), d_prev = alg.layer_end(layer - 1) - lo;
  const std::size_t out_lo = alg.layer_begin(layer), d_out = alg.layer_end(layer) - out_lo;

  // Column (m, i) holds [X_m, e_i] restricted to layer `layer`.
  std::vector<std::vector<double>> columns;
  for (std::size_t m = 0; m < r; ++m) {
    for (std::size_t i = 0; i < d_prev; ++i) {
      const AlgebraVector br = alg.bracket(alg.basis(m), alg.basis(lo + i));
      columns.push_back(alg.layer_coords(layer, br));
    }
    if (linalg::rank(columns) < d_out) continue;

    const std::size_t p = m + 1;
    const linalg::Matrix mat = linalg::Matrix::from_columns(columns);
    const std::vector<double> rhs = alg.layer_coords(layer, w);
    const std::vector<double> x = linalg::min_norm_solve(mat, rhs);
    std::vector<AlgebraVector> out;
    for (std::size_t q = 0; q < p; ++q)
      out.push_back(alg.from_layer_coords(
          layer - 1, std::span<const double>(x.data() + q * d_prev, d_prev)));
    return out;
  }
  fail(ErrorKind::NotSurjective, "commutator_split: [g_1, g_" + std::to_string(layer - 1) +
                                     "] does not span g_" + std::to_string(layer));
}

namespace {

// Path from the identity whose endpoint lies in G_layer with pi_layer equal
// to w, for w in g_layer. Layer 1 is a segment; higher layers are products of
// path commutators seg(t X_m) * P(W_m / t) * rev * rev with t = |W_m|^{1/layer}.
HorizontalPath layer_path(const GroupPtr& g, const AlgebraVector& w, int layer) {
  const StratifiedAlgebra& alg = g->algebra();
  HorizontalPath out = HorizontalPath::empty(g, g->identity());
  if (w.is_zero()) return out;
  if (layer == 1) {
    std::vector<double> v = alg.layer_coords(1, w);
    const double n = linalg::norm(v);
    for (double& x : v) x /= n;
    return HorizontalPath::segment(g, v, n);
  }
  const std::vector<AlgebraVector> split = commutator_split(alg, w, layer);
  for (std::size_t m = 0; m < split.size(); ++m) {
    const double n = split[m].norm();
    if (n == 0.0) continue;
    const double t = layer == 2 ? std::sqrt(n) : std::pow(n, 1.0 / layer);
    std::vector<double> e(alg.rank(), 0.0);
    e[m] = 1.0;
    const HorizontalPath seg = HorizontalPath::segment(g, e, t);
    const HorizontalPath inner = layer_path(g, (1.0 / t) * split[m], layer - 1);
    out = concat(out, seg);
    out = concat(out, inner);
    out = concat(out, reverse(seg));
    out = concat(out, reverse(inner));
  }
  return out;
}

}  // namespace

Connector connect_to(const GroupPtr& g, const AlgebraVector& y) {
  const StratifiedAlgebra& alg = g->algebra();
  require(y.size() == alg.dim(), ErrorKind::DimensionMismatch, "connect_to: target size");
  Connector c;
  c.target = y;
  const GroupElement target = g->exp(y);
  const double lambda = g->homogeneous_norm(target);
  if (lambda == 0.0) {
    c.path = HorizontalPath::empty(g, g->identity());
    c.endpoint = g->identity();
    c.residual = alg.zero();
    return c;
  }

  const GroupElement unit_target = g->dilate(1.0 / lambda, target);
  HorizontalPath unit = layer_path(g, alg.project(1, unit_target.log), 1);
  for (int j = 2; j <= alg.step(); ++j) {
    const GroupElement rest = g->product(g->inverse(unit.endpoint()), unit_target);
    const AlgebraVector w = alg.project(j, rest.log);
    if (!w.is_zero()) unit = concat(unit, layer_path(g, w, j));
  }

  c.path = unit.dilate_reparam(lambda);
  c.endpoint = c.path.endpoint();
  c.length = c.path.length();
  c.residual = g->product(g->inverse(c.endpoint), target).log;
  return c;
}

}  // namespace carnot

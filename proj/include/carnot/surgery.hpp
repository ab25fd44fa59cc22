#pragma once

#include <vector>

#include "carnot/curve.hpp"

namespace carnot {

// Constructive horizontal path from the identity to exp(Y), standing in for
// a geodesic delta_Y.
struct Connector {
  AlgebraVector target;
  HorizontalPath path;
  GroupElement endpoint;
  double length = 0.0;
  AlgebraVector residual;  // log(endpoint^{-1} exp(Y))
};

// Built at unit homogeneous norm and dilated back, so the length of the
// connector to delta_l(Y) is exactly l times the length to Y. At unit scale:
// a segment for layer 1, then for each higher layer j a product of path
// commutators whose endpoint lies in G_j with the layer-j residual as its
// pi_j; the lower layers of the residual vanish after each pass.
Connector connect_to(const GroupPtr& g, const AlgebraVector& y);

// Min-norm W_1..W_p in g_{layer-1} with sum_m [X_m, W_m] = w, using the
// smallest prefix X_1..X_p of the first-layer basis whose brackets span
// g_layer. Returns p vectors.
std::vector<AlgebraVector> commutator_split(const StratifiedAlgebra& alg, const AlgebraVector& w,
                                            int layer);

// cut(gamma; [s, s']): the chord of the projection replaces gamma|[s, s'].
HorizontalPath cut(const HorizontalPath& p, double s, double t);
// cut followed by recentering the domain to a symmetric interval.
HorizontalPath cut_sym(const HorizontalPath& p, double s, double t);

struct CutGain {
  double gain;   // L(gamma) - L(cut)
  double bound;  // (s' - s)/2 exc(gamma; [s, s'])^2
  bool holds(double tol) const { return gain >= bound - tol; }
};
CutGain cut_gain_bound(const HorizontalPath& p, double s, double t);

// Recentering: the same curve on [-d/2, d/2].
HorizontalPath recenter(const HorizontalPath& p);

struct Displacement {
  GroupElement value;
  int lowest_layer;  // lowest layer with a coordinate above 1e-12
};

// gamma|[a,s] * delta_Y * gamma|[s,s'] * reverse(delta_Y) * gamma|[s',b].
HorizontalPath dev(const HorizontalPath& p, double s, double t, const Connector& c);
HorizontalPath dev(const HorizontalPath& p, double s, double t, const AlgebraVector& y);
// dev followed by recentering.
HorizontalPath dev_sym(const HorizontalPath& p, double s, double t, const Connector& c);

struct DisplacementCheck {
  Displacement direct;         // gamma(b)^{-1} dev(b''')
  GroupElement formula;        // C_{gamma|_b^s}([exp Y, gamma|_s^{s'}])
  double agreement;            // max coordinate difference
};
DisplacementCheck displacement(const HorizontalPath& p, double s, double t, const Connector& c);
DisplacementCheck displacement(const HorizontalPath& p, double s, double t, const AlgebraVector& y);

struct Device {
  double s;
  double t;
  AlgebraVector y;
};

struct IteratedResult {
  HorizontalPath path;
  Displacement displacement;
  std::vector<double> connector_lengths;
};

// Devices on intervals of the original curve with t_i <= s_{i+1}; device k is
// applied at its interval shifted by 2 sum_{i<k} l_i (symmetric: sum_{i<k} l_i,
// with recentering after every device).
IteratedResult dev_iter(const HorizontalPath& p, const std::vector<Device>& devices);
IteratedResult dev_iter_sym(const HorizontalPath& p, const std::vector<Device>& devices);

}  // namespace carnot

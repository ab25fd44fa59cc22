#pragma once

#include <utility>
#include <vector>

#include "carnot/curve.hpp"
#include "carnot/linalg.hpp"

namespace carnot {

// Finite union of closed intervals inside the domain of a path.
using Window = std::vector<std::pair<double, double>>;

double measure(const Window& w);

struct ExcessReport {
  Window window;
  linalg::Matrix gram;       // r x r time average of h h^T over the window
  double value = 0.0;        // sqrt of the smallest eigenvalue of gram
  std::vector<double> minimizer;  // unit eigenvector for that eigenvalue
};

// Time average of outer products of the controls over the window: exact, a
// finite weighted sum because the controls are piecewise constant.
linalg::Matrix control_gram(const HorizontalPath& p, const Window& w);
ExcessReport excess(const HorizontalPath& p, const Window& w);
inline ExcessReport excess(const HorizontalPath& p, double s, double t) {
  return excess(p, Window{{s, t}});
}

// Smallest value of sqrt(v^T G v) over a mesh of `points` unit vectors
// followed by local refinement around the best mesh point. Independent of
// the eigen route; r = 2 uses an angle mesh, r >= 3 a Fibonacci-type mesh.
struct MeshMinimum {
  double value;
  std::vector<double> direction;
};
MeshMinimum excess_by_mesh(const linalg::Matrix& gram, std::size_t points = 10000);

struct ScalingCheck {
  double translation;   // |exc(g gamma; B) - exc(gamma; B)|
  double gram_translation;  // max |gram(g gamma) - gram(gamma)|
  double space;         // |exc(delta_l o gamma; B) - l exc(gamma; B)|
  double reparam;       // |exc(gamma_3; l B) - exc(gamma; B)|
  double max() const;
};
ScalingCheck excess_scaling_check(const HorizontalPath& p, const Window& w, double lambda,
                                  const GroupElement& g);

struct IntervalSelection {
  std::vector<std::pair<double, double>> intervals;  // ordered, disjoint
  std::vector<std::vector<double>> increments;        // Delta_i in g_1
  double det = 0.0;                                   // |det(Delta_1, ..., Delta_r)|
  double c_meas = 0.0;                                // det / L^r
  bool lower_bound_ok = false;                        // |Delta_i| >= c_meas L for all i
  int grid_depth = 0;
};

// Maximizes |det| over r ordered disjoint subintervals of [s, t] with
// endpoints on the dyadic grid of the given depth, then refines endpoints by
// coordinate ascent. Throws DegenerateDirections when det < 1e-12 L^r.
IntervalSelection select_intervals(const HorizontalPath& p, double s, double t, int depth = 6);

}  // namespace carnot

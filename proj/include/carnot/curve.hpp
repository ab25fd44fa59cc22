#pragma once

#include <span>
#include <vector>

#include "carnot/group.hpp"

namespace carnot {

// One piece of a piecewise-constant control: h held for dt units of time.
struct Piece {
  double dt;
  std::vector<double> h;  // coordinates in g_1, length rank()

  friend bool operator==(const Piece&, const Piece&) = default;
};

// Horizontal curve on [a, a + sum dt] lifted exactly from piecewise-constant
// controls: gamma(t) = start * prod exp(dt_k h_k) over the pieces before t,
// times exp((t - t_k) h_k) inside the active piece. Immutable.
class HorizontalPath {
 public:
  HorizontalPath() = default;
  // Validates positive durations and control length rank().
  HorizontalPath(GroupPtr group, GroupElement start, std::vector<Piece> pieces, double a = 0.0);
  // The empty path sitting at start.
  static HorizontalPath empty(GroupPtr group, GroupElement start, double a = 0.0);
  // Controls given as algebra vectors; rejects any non-horizontal coordinate.
  static HorizontalPath lift(GroupPtr group, GroupElement start,
                             const std::vector<std::pair<double, AlgebraVector>>& pieces,
                             double a = 0.0);
  // exp(t v) for t in [0, duration]: one piece with control v.
  static HorizontalPath segment(GroupPtr group, std::span<const double> v, double duration);

  const GroupPtr& group() const noexcept { return group_; }
  const GroupElement& start() const noexcept { return start_; }
  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  double a() const noexcept { return a_; }
  double b() const noexcept { return knots_.back(); }
  double duration() const noexcept { return total_; }
  // Piece boundaries a = t_0 < t_1 < ... < t_m = b.
  const std::vector<double>& knots() const noexcept { return knots_; }
  bool empty() const noexcept { return pieces_.empty(); }

  double length() const;
  bool is_arclength(double tol = 1e-12) const;

  const GroupElement& endpoint() const noexcept { return points_.back(); }
  GroupElement eval(double t) const;
  // gamma(s)^{-1} gamma(t)
  GroupElement increment(double s, double t) const;
  // Projection pi(gamma(t)) in g_1 coordinates, accumulated piecewise.
  std::vector<double> projection(double t) const;
  // Endpoint by a single left fold start * exp(dt_1 h_1) * ... (no cached knots).
  GroupElement fold_endpoint() const;

  // gamma|[s, t] on [s, t], starting at gamma(s).
  HorizontalPath restrict(double s, double t) const;
  // g * gamma
  HorizontalPath translate(const GroupElement& g) const;
  // Same curve on [a + offset, b + offset].
  HorizontalPath shift(double offset) const;
  // delta_lambda o gamma: controls scaled by lambda, same times.
  HorizontalPath dilate(double lambda) const;
  // gamma_3(t) = delta_lambda(gamma(t / lambda)): durations and a scaled by lambda.
  HorizontalPath dilate_reparam(double lambda) const;
  // Same start, same domain, the given pieces replaced by new ones.
  HorizontalPath with_pieces(std::vector<Piece> pieces) const;

  // Index of the piece containing t (the earlier one at interior knots).
  std::size_t piece_at(double t) const;

 private:
  void build();
  void check_time(double t) const;

  GroupPtr group_;
  GroupElement start_;
  std::vector<Piece> pieces_;
  double a_ = 0.0;
  double total_ = 0.0;
  std::vector<double> knots_{0.0};
  std::vector<GroupElement> points_;
};

// alpha then beta left-translated to begin at alpha's endpoint, on
// [a_alpha, b_alpha + duration(beta)]: the piece lists are appended.
HorizontalPath concat(const HorizontalPath& alpha, const HorizontalPath& beta);
// beta traveled backwards: starts at beta's endpoint, pieces reversed with
// negated controls, same domain.
HorizontalPath reverse(const HorizontalPath& p);

// Grid of sample times with the evaluated points; knots are always included
// so boundary samples are exact.
struct EvalGrid {
  std::vector<double> times;
  std::vector<GroupElement> points;
};
EvalGrid sample(const HorizontalPath& p, std::size_t per_piece);

// max ||gamma(t)^{-1} gamma(t')|| / |t - t'| over pairs of grid times, the
// measured Lipschitz constant of an arclength curve w.r.t. the homogeneous norm.
double measured_lipschitz(const HorizontalPath& p, std::size_t samples);

}  // namespace carnot

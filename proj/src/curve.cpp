#include "carnot/curve.hpp"

#include <algorithm>
#include <cmath>

#include "carnot/errors.hpp"
#include "carnot/linalg.hpp"

namespace carnot {

HorizontalPath::HorizontalPath(GroupPtr group, GroupElement start, std::vector<Piece> pieces,
                               double a)
    : group_(std::move(group)), start_(std::move(start)), pieces_(std::move(pieces)), a_(a) {
  require(group_ != nullptr, ErrorKind::InvalidArgument, "path needs a group");
  require(start_.log.size() == group_->dim(), ErrorKind::DimensionMismatch,
          "path start does not belong to the group");
  require(std::isfinite(a_), ErrorKind::InvalidArgument, "path offset must be finite");
  for (const Piece& p : pieces_) {
    require(p.dt > 0.0 && std::isfinite(p.dt), ErrorKind::InvalidArgument,
            "piece durations must be positive");
    require(p.h.size() == group_->rank(), ErrorKind::DimensionMismatch,
            "piece control must have rank() components");
  }
  build();
}

HorizontalPath HorizontalPath::empty(GroupPtr group, GroupElement start, double a) {
  return HorizontalPath(std::move(group), std::move(start), {}, a);
}

HorizontalPath HorizontalPath::lift(GroupPtr group, GroupElement start,
                                    const std::vector<std::pair<double, AlgebraVector>>& pieces,
                                    double a) {
  const StratifiedAlgebra& alg = group->algebra();
  std::vector<Piece> out;
  for (const auto& [dt, v] : pieces) {
    require(v.size() == alg.dim(), ErrorKind::DimensionMismatch, "lift: control size");
    for (std::size_t k = alg.layer_end(1); k < alg.dim(); ++k)
      require(v[k] == 0.0, ErrorKind::InvalidArgument,
              "lift: control has coordinates outside the first layer");
    out.push_back({dt, alg.layer_coords(1, v)});
  }
  return HorizontalPath(std::move(group), std::move(start), std::move(out), a);
}

HorizontalPath HorizontalPath::segment(GroupPtr group, std::span<const double> v, double duration) {
  GroupElement id = group->identity();
  if (duration == 0.0) return empty(std::move(group), std::move(id));
  std::vector<Piece> one{{duration, std::vector<double>(v.begin(), v.end())}};
  return HorizontalPath(std::move(group), std::move(id), std::move(one));
}

void HorizontalPath::build() {
  // Knots are a + (running sum from 0), so a recentered domain [-d/2, d/2]
  // has midpoint exactly 0.
  knots_.assign(1, a_);
  points_.assign(1, start_);
  knots_.reserve(pieces_.size() + 1);
  points_.reserve(pieces_.size() + 1);
  total_ = 0.0;
  for (const Piece& p : pieces_) {
    total_ += p.dt;
    knots_.push_back(a_ + total_);
    std::vector<double> step(p.h.size());
    for (std::size_t i = 0; i < step.size(); ++i) step[i] = p.dt * p.h[i];
    points_.push_back(group_->product(points_.back(), group_->exp_horizontal(step)));
  }
}

double HorizontalPath::length() const {
  double total = 0.0;
  for (const Piece& p : pieces_) total += p.dt * linalg::norm(p.h);
  return total;
}

bool HorizontalPath::is_arclength(double tol) const {
  return std::all_of(pieces_.begin(), pieces_.end(),
                     [tol](const Piece& p) { return std::abs(linalg::norm(p.h) - 1.0) <= tol; });
}

void HorizontalPath::check_time(double t) const {
  const double slack = 1e-12 * std::max({1.0, std::abs(a_), std::abs(b())});
  if (!(t >= a_ - slack && t <= b() + slack))
    fail(ErrorKind::OutOfDomain, "time " + std::to_string(t) + " outside [" + std::to_string(a_) +
                                     ", " + std::to_string(b()) + "]");
}

std::size_t HorizontalPath::piece_at(double t) const {
  if (pieces_.empty()) return 0;
  const auto it = std::lower_bound(knots_.begin() + 1, knots_.end(), t);
  const std::size_t k = static_cast<std::size_t>(it - knots_.begin()) - 1;
  return std::min(k, pieces_.size() - 1);
}

GroupElement HorizontalPath::eval(double t) const {
  check_time(t);
  if (t <= a_) return points_.front();
  if (t >= b()) return points_.back();
  const std::size_t k = piece_at(t);
  if (t == knots_[k]) return points_[k];
  if (t == knots_[k + 1]) return points_[k + 1];
  const Piece& p = pieces_[k];
  const double tau = t - knots_[k];
  std::vector<double> step(p.h.size());
  for (std::size_t i = 0; i < step.size(); ++i) step[i] = tau * p.h[i];
  return group_->product(points_[k], group_->exp_horizontal(step));
}

GroupElement HorizontalPath::increment(double s, double t) const {
  return group_->product(group_->inverse(eval(s)), eval(t));
}

std::vector<double> HorizontalPath::projection(double t) const { return group_->pi(eval(t)); }

GroupElement HorizontalPath::fold_endpoint() const {
  GroupElement g = start_;
  for (const Piece& p : pieces_) {
    std::vector<double> step(p.h.size());
    for (std::size_t i = 0; i < step.size(); ++i) step[i] = p.dt * p.h[i];
    g = group_->product(g, group_->exp_horizontal(step));
  }
  return g;
}

HorizontalPath HorizontalPath::restrict(double s, double t) const {
  check_time(s);
  check_time(t);
  // Clamp first: times past the end by rounding are legal.
  s = std::clamp(s, a_, b());
  t = std::clamp(t, a_, b());
  require(s <= t, ErrorKind::InvalidArgument, "restrict: s <= t required");
  std::vector<Piece> out;
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const double lo = std::max(knots_[k], s), hi = std::min(knots_[k + 1], t);
    if (!(hi > lo)) continue;
    const bool whole = lo == knots_[k] && hi == knots_[k + 1];
    out.push_back({whole ? pieces_[k].dt : hi - lo, pieces_[k].h});
  }
  return HorizontalPath(group_, eval(s), std::move(out), s);
}

HorizontalPath HorizontalPath::translate(const GroupElement& g) const {
  return HorizontalPath(group_, group_->product(g, start_), pieces_, a_);
}

HorizontalPath HorizontalPath::shift(double offset) const {
  return HorizontalPath(group_, start_, pieces_, a_ + offset);
}

HorizontalPath HorizontalPath::dilate(double lambda) const {
  require(lambda > 0.0, ErrorKind::InvalidArgument, "dilate: lambda > 0 required");
  std::vector<Piece> out = pieces_;
  for (Piece& p : out)
    for (double& x : p.h) x *= lambda;
  return HorizontalPath(group_, group_->dilate(lambda, start_), std::move(out), a_);
}

HorizontalPath HorizontalPath::dilate_reparam(double lambda) const {
  require(lambda > 0.0, ErrorKind::InvalidArgument, "dilate_reparam: lambda > 0 required");
  std::vector<Piece> out = pieces_;
  for (Piece& p : out) p.dt *= lambda;
  return HorizontalPath(group_, group_->dilate(lambda, start_), std::move(out), a_ * lambda);
}

HorizontalPath HorizontalPath::with_pieces(std::vector<Piece> pieces) const {
  return HorizontalPath(group_, start_, std::move(pieces), a_);
}

HorizontalPath concat(const HorizontalPath& alpha, const HorizontalPath& beta) {
  require(alpha.group()->dim() == beta.group()->dim() &&
              alpha.group()->algebra().layer_dims() == beta.group()->algebra().layer_dims(),
          ErrorKind::DimensionMismatch, "concat: paths live in different groups");
  std::vector<Piece> pieces = alpha.pieces();
  pieces.insert(pieces.end(), beta.pieces().begin(), beta.pieces().end());
  return HorizontalPath(alpha.group(), alpha.start(), std::move(pieces), alpha.a());
}

HorizontalPath reverse(const HorizontalPath& p) {
  std::vector<Piece> pieces(p.pieces().rbegin(), p.pieces().rend());
  for (Piece& q : pieces)
    for (double& x : q.h) x = -x;
  return HorizontalPath(p.group(), p.endpoint(), std::move(pieces), p.a());
}

EvalGrid sample(const HorizontalPath& p, std::size_t per_piece) {
  require(per_piece >= 1, ErrorKind::InvalidArgument, "sample: per_piece >= 1");
  EvalGrid grid;
  const auto& knots = p.knots();
  grid.times.push_back(knots.front());
  grid.points.push_back(p.start());
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    for (std::size_t i = 1; i < per_piece; ++i) {
      const double t = knots[k] + (knots[k + 1] - knots[k]) * static_cast<double>(i) /
                                      static_cast<double>(per_piece);
      grid.times.push_back(t);
      grid.points.push_back(p.eval(t));
    }
    grid.times.push_back(knots[k + 1]);
    grid.points.push_back(p.eval(knots[k + 1]));
  }
  return grid;
}

double measured_lipschitz(const HorizontalPath& p, std::size_t samples) {
  require(samples >= 2, ErrorKind::InvalidArgument, "measured_lipschitz: samples >= 2");
  const GroupPtr& g = p.group();
  std::vector<double> times(samples);
  std::vector<GroupElement> inv(samples), pts(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    times[i] = p.a() + p.duration() * static_cast<double>(i) / static_cast<double>(samples - 1);
    pts[i] = p.eval(times[i]);
    inv[i] = g->inverse(pts[i]);
  }
  double best = 0.0;
  for (std::size_t i = 0; i < samples; ++i)
    for (std::size_t j = i + 1; j < samples; ++j) {
      const double dt = times[j] - times[i];
      if (dt <= 0.0) continue;
      best = std::max(best, g->homogeneous_norm(g->product(inv[i], pts[j])) / dt);
    }
  return best;
}

}  // namespace carnot

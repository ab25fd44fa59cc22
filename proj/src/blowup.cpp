#include "carnot/blowup.hpp"

#include <algorithm>
#include <cmath>

#include "carnot/errors.hpp"
#include "carnot/parallel.hpp"

namespace carnot {

HorizontalPath dilate_reparam(const HorizontalPath& p, double lambda, double anchor) {
  require(lambda > 0.0, ErrorKind::InvalidArgument, "dilate_reparam: lambda > 0 required");
  const GroupPtr& g = p.group();
  const GroupElement start =
      g->dilate(1.0 / lambda, g->product(g->inverse(p.eval(anchor)), p.start()));
  std::vector<Piece> pieces = p.pieces();
  for (Piece& q : pieces) q.dt /= lambda;
  return HorizontalPath(g, start, std::move(pieces), (p.a() - anchor) / lambda);
}

namespace {

struct ControlStats {
  std::vector<double> mean;
  double mean_sq = 0.0;  // avg |h|^2
};

ControlStats stats(const HorizontalPath& p, const Window& w) {
  const std::size_t r = p.group()->rank();
  ControlStats out{std::vector<double>(r, 0.0), 0.0};
  const auto& knots = p.knots();
  const double total = measure(w);
  for (const auto& [s, t] : w)
    for (std::size_t k = 0; k < p.pieces().size(); ++k) {
      const double overlap = std::min(knots[k + 1], t) - std::max(knots[k], s);
      if (!(overlap > 0.0)) continue;
      const auto& h = p.pieces()[k].h;
      for (std::size_t i = 0; i < r; ++i) {
        out.mean[i] += overlap * h[i];
        out.mean_sq += overlap * (h[i] * h[i]);
      }
    }
  for (double& x : out.mean) x /= total;
  out.mean_sq /= total;
  return out;
}

ScaleRow scale_row(const HorizontalPath& p, double anchor, double scale, bool one_sided,
                   double n) {
  ScaleRow row;
  row.scale = scale;
  double lo = one_sided ? anchor : anchor - scale * n, hi = anchor + scale * n;
  if (lo < p.a() || hi > p.b()) row.clipped = true;
  lo = std::max(lo, p.a());
  hi = std::min(hi, p.b());
  require(hi > lo, ErrorKind::OutOfDomain, "blowup: window is empty after clipping");
  row.window = {{lo, hi}};

  const ExcessReport e = excess(p, row.window);
  row.excess = e.value;
  row.direction = e.minimizer;

  const ControlStats cs = stats(p, row.window);
  const double m = linalg::norm(cs.mean);
  if (m > 0.0) {
    row.mean_direction = cs.mean;
    for (double& x : row.mean_direction) x /= m;
    // avg |h - v|^2 = avg |h|^2 - 2 <v, mean> + 1 with |v| = 1.
    row.residual = std::sqrt(std::max(cs.mean_sq - 2.0 * m + 1.0, 0.0));
  } else {
    row.residual = std::sqrt(cs.mean_sq);
  }
  return row;
}

bool decreasing(const std::vector<ScaleRow>& rows, double ScaleRow::*field) {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (!(rows[i].*field < rows[i - 1].*field)) return false;
  return rows.size() >= 2;
}

}  // namespace

BlowupProfile excess_profile(const HorizontalPath& p, double anchor,
                             const std::vector<double>& scales, bool one_sided, double window_n,
                             double tolerance) {
  require(!scales.empty(), ErrorKind::InvalidArgument, "blowup: no scales given");
  for (std::size_t i = 0; i < scales.size(); ++i) {
    require(scales[i] > 0.0, ErrorKind::InvalidArgument, "blowup: scales must be positive");
    if (i > 0)
      require(scales[i] < scales[i - 1], ErrorKind::InvalidArgument,
              "blowup: scales must be decreasing");
  }
  require(window_n > 0.0 && tolerance > 0.0, ErrorKind::InvalidArgument,
          "blowup: window and tolerance must be positive");

  BlowupProfile prof;
  prof.anchor = anchor;
  prof.one_sided = one_sided;
  prof.window_n = window_n;
  prof.tolerance = tolerance;
  prof.rows.resize(scales.size());
  parallel_for(scales.size(), [&](std::size_t i) {
    prof.rows[i] = scale_row(p, anchor, scales[i], one_sided, window_n);
  });
  for (ScaleRow& row : prof.rows) {
    row.diagnostic = row.excess / std::sqrt(row.scale / scales.front());
    if (row.clipped)
      prof.warnings.push_back("window at scale " + std::to_string(row.scale) +
                              " clipped to the domain");
  }
  const ScaleRow& last = prof.rows.back();
  prof.tangent_line = !last.mean_direction.empty() && last.residual < tolerance;
  if (prof.tangent_line) prof.tangent_direction = last.mean_direction;
  prof.excess_decreasing = decreasing(prof.rows, &ScaleRow::excess);
  prof.residual_decreasing = decreasing(prof.rows, &ScaleRow::residual);
  return prof;
}

TangentEstimate tangent_line_estimate(const HorizontalPath& p, double anchor,
                                      const std::vector<double>& scales, double window_n,
                                      double tolerance, bool one_sided) {
  const BlowupProfile prof = excess_profile(p, anchor, scales, one_sided, window_n, tolerance);
  TangentEstimate out;
  out.direction = prof.rows.back().mean_direction;
  for (const ScaleRow& row : prof.rows) {
    out.residuals.push_back(row.residual);
    out.detected_per_scale.push_back(!row.mean_direction.empty() && row.residual < tolerance);
  }
  out.detected = prof.tangent_line;
  return out;
}

}  // namespace carnot

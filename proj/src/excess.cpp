#include "carnot/excess.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "carnot/errors.hpp"
#include "carnot/kernels.hpp"
#include "carnot/parallel.hpp"

namespace carnot {

double measure(const Window& w) {
  double total = 0.0;
  for (const auto& [s, t] : w) total += t - s;
  return total;
}

linalg::Matrix control_gram(const HorizontalPath& p, const Window& w) {
  const std::size_t r = p.group()->rank();
  const double slack = 1e-12 * std::max({1.0, std::abs(p.a()), std::abs(p.b())});
  for (const auto& [s, t] : w) {
    require(s <= t, ErrorKind::InvalidArgument, "window interval needs s <= t");
    require(s >= p.a() - slack && t <= p.b() + slack, ErrorKind::OutOfDomain,
            "window exceeds the path domain");
  }
  const double total = measure(w);
  require(total > 0.0, ErrorKind::InvalidArgument, "excess: empty window");

  linalg::Matrix g(r, r);
  const auto& knots = p.knots();
  for (const auto& [s, t] : w)
    for (std::size_t k = 0; k < p.pieces().size(); ++k) {
      const double overlap = std::min(knots[k + 1], t) - std::max(knots[k], s);
      if (!(overlap > 0.0)) continue;
      const auto& h = p.pieces()[k].h;
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) g(i, j) += overlap * (h[i] * h[j]);
    }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) g(i, j) /= total;
  return g;
}

ExcessReport excess(const HorizontalPath& p, const Window& w) {
  ExcessReport rep;
  rep.window = w;
  rep.gram = control_gram(p, w);
  // The Gram is f^T f with rows sqrt(overlap / |w|) h; the singular values of
  // f keep a vanishing excess at rounding size instead of its square root.
  const std::size_t r = p.group()->rank();
  const double total = measure(w);
  std::vector<std::vector<double>> rows;
  const auto& knots = p.knots();
  for (const auto& [s, t] : w)
    for (std::size_t k = 0; k < p.pieces().size(); ++k) {
      const double overlap = std::min(knots[k + 1], t) - std::max(knots[k], s);
      if (!(overlap > 0.0)) continue;
      const double f = std::sqrt(overlap / total);
      std::vector<double> row(r);
      for (std::size_t i = 0; i < r; ++i) row[i] = f * p.pieces()[k].h[i];
      rows.push_back(std::move(row));
    }
  linalg::Matrix f(rows.size(), r);
  for (std::size_t k = 0; k < rows.size(); ++k)
    for (std::size_t i = 0; i < r; ++i) f(k, i) = rows[k][i];
  const linalg::SmallestEigen e = linalg::smallest_singular(f);
  rep.value = e.value;
  rep.minimizer = e.vector;
  return rep;
}

namespace {

double quad(const linalg::Matrix& g, const std::vector<double>& v) {
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) acc = acc + (g(i, j) * v[i]) * v[j];
  return acc;
}

std::vector<double> normalized(std::vector<double> v) {
  const double n = linalg::norm(v);
  for (double& x : v) x /= n;
  return v;
}

}  // namespace

MeshMinimum excess_by_mesh(const linalg::Matrix& gram, std::size_t points) {
  const std::size_t r = gram.rows();
  require(r >= 2 && gram.cols() == r, ErrorKind::InvalidArgument, "mesh route needs r >= 2");
  require(points >= 16, ErrorKind::InvalidArgument, "mesh route needs at least 16 points");
  const double pi = std::numbers::pi;

  std::vector<double> soa(r * points);
  if (r == 2) {
    for (std::size_t p = 0; p < points; ++p) {
      const double th = 2.0 * pi * static_cast<double>(p) / static_cast<double>(points);
      soa[p] = std::cos(th);
      soa[points + p] = std::sin(th);
    }
  } else if (r == 3) {
    const double golden = pi * (3.0 - std::sqrt(5.0));
    for (std::size_t p = 0; p < points; ++p) {
      const double z = 1.0 - 2.0 * (static_cast<double>(p) + 0.5) / static_cast<double>(points);
      const double rad = std::sqrt(1.0 - z * z);
      const double th = golden * static_cast<double>(p);
      soa[p] = rad * std::cos(th);
      soa[points + p] = rad * std::sin(th);
      soa[2 * points + p] = z;
    }
  } else {
    std::mt19937_64 rng(0x5eedULL);
    std::normal_distribution<double> n01(0.0, 1.0);
    std::vector<double> v(r);
    for (std::size_t p = 0; p < points; ++p) {
      for (double& x : v) x = n01(rng);
      v = normalized(v);
      for (std::size_t c = 0; c < r; ++c) soa[c * points + p] = v[c];
    }
  }

  std::vector<double> q(points);
  kernels::quadratic_forms(gram.data(), r, soa, points, q);
  const std::size_t best =
      static_cast<std::size_t>(std::min_element(q.begin(), q.end()) - q.begin());

  std::vector<double> v(r);
  for (std::size_t c = 0; c < r; ++c) v[c] = soa[c * points + best];
  double fv = q[best];

  if (r == 2) {
    // Golden-section search on the angle within one mesh spacing.
    const double spacing = 2.0 * pi / static_cast<double>(points);
    const double th0 = std::atan2(v[1], v[0]);
    auto f = [&](double th) { return quad(gram, {std::cos(th), std::sin(th)}); };
    double lo = th0 - spacing, hi = th0 + spacing;
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - ratio * (hi - lo), x2 = lo + ratio * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      if (f1 <= f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - ratio * (hi - lo);
        f1 = f(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + ratio * (hi - lo);
        f2 = f(x2);
      }
    }
    const double th = 0.5 * (lo + hi);
    if (f(th) < fv) {
      v = {std::cos(th), std::sin(th)};
      fv = f(th);
    }
  } else {
    // Pattern search along coordinate perturbations, renormalized to the sphere.
    double step = std::sqrt(4.0 * pi / static_cast<double>(points));
    while (step > 1e-12) {
      bool improved = false;
      for (std::size_t c = 0; c < r; ++c)
        for (double sign : {1.0, -1.0}) {
          std::vector<double> w = v;
          w[c] += sign * step;
          w = normalized(w);
          const double fw = quad(gram, w);
          if (fw < fv) {
            v = w;
            fv = fw;
            improved = true;
          }
        }
      if (!improved) step *= 0.5;
    }
  }
  return {std::sqrt(std::max(fv, 0.0)), v};
}

double ScalingCheck::max() const {
  return std::max({translation, gram_translation, space, reparam});
}

ScalingCheck excess_scaling_check(const HorizontalPath& p, const Window& w, double lambda,
                                  const GroupElement& g) {
  require(lambda > 0.0, ErrorKind::InvalidArgument, "scaling check: lambda > 0 required");
  const ExcessReport base = excess(p, w);
  const ExcessReport moved = excess(p.translate(g), w);
  ScalingCheck out{};
  out.translation = std::abs(moved.value - base.value);
  for (std::size_t i = 0; i < base.gram.rows(); ++i)
    for (std::size_t j = 0; j < base.gram.cols(); ++j)
      out.gram_translation =
          std::max(out.gram_translation, std::abs(moved.gram(i, j) - base.gram(i, j)));
  out.space = std::abs(excess(p.dilate(lambda), w).value - lambda * base.value);
  Window scaled = w;
  for (auto& [s, t] : scaled) s *= lambda, t *= lambda;
  out.reparam = std::abs(excess(p.dilate_reparam(lambda), scaled).value - base.value);
  return out;
}

namespace {

// Candidate endpoint tuple on the grid with its determinant.
struct Candidate {
  double det = -1.0;
  std::vector<int> ends;  // a_1, b_1, a_2, b_2, ...
};

// Near-equal dets count as ties and go to the smaller grid indices, so the
// choice on a plateau does not depend on rounding (or on a dilation).
bool better(const Candidate& x, const Candidate& y) {
  const double tol = 1e-12 * std::max(std::abs(x.det), std::abs(y.det));
  if (std::abs(x.det - y.det) > tol) return x.det > y.det;
  return x.ends < y.ends;
}

// Cofactor vector c with det(D_1, ..., D_{r-1}, x) = c . x.
std::vector<double> cofactors(const std::vector<std::vector<double>>& cols, std::size_t r) {
  std::vector<double> c(r, 0.0);
  if (r == 1) {
    c[0] = 1.0;
    return c;
  }
  for (std::size_t k = 0; k < r; ++k) {
    linalg::Matrix minor(r - 1, r - 1);
    for (std::size_t i = 0, row = 0; i < r; ++i) {
      if (i == k) continue;
      for (std::size_t j = 0; j + 1 < r; ++j) minor(row, j) = cols[j][i];
      ++row;
    }
    const double sign = ((k + r - 1) % 2 == 0) ? 1.0 : -1.0;
    c[k] = sign * linalg::determinant(minor);
  }
  return c;
}

class GridSearch {
 public:
  GridSearch(const std::vector<std::vector<double>>& prefix, std::size_t r)
      : prefix_(prefix), r_(r), n_(static_cast<int>(prefix.size()) - 1) {}

  // Best tuple whose first interval starts at grid index a0.
  Candidate run_from(int a0) const {
    Candidate best;
    std::vector<int> ends{a0};
    std::vector<std::vector<double>> cols;
    if (r_ == 1) {
      scan(ends, cols, a0, best);
      return best;
    }
    for (int b0 = a0 + 1; b0 <= n_; ++b0) {
      ends.push_back(b0);
      cols.push_back(delta(a0, b0));
      extend(ends, cols, b0, best);
      cols.pop_back();
      ends.pop_back();
    }
    return best;
  }

  int size() const { return n_; }

 private:
  std::vector<double> delta(int a, int b) const {
    std::vector<double> d(r_);
    for (std::size_t c = 0; c < r_; ++c) d[c] = prefix_[b][c] - prefix_[a][c];
    return d;
  }

  void extend(std::vector<int>& ends, std::vector<std::vector<double>>& cols, int lo,
              Candidate& best) const {
    if (cols.size() + 1 == r_) {
      scan(ends, cols, lo, best);
      return;
    }
    for (int a = lo; a <= n_; ++a)
      for (int b = a + 1; b <= n_; ++b) {
        ends.push_back(a);
        ends.push_back(b);
        cols.push_back(delta(a, b));
        extend(ends, cols, b, best);
        cols.pop_back();
        ends.pop_back();
        ends.pop_back();
      }
  }

  // Last interval [a, b] with lo <= a < b maximizing |c . (P_b - P_a)|.
  void scan(const std::vector<int>& ends, const std::vector<std::vector<double>>& cols, int lo,
            Candidate& best) const {
    const std::vector<double> c = cofactors(cols, r_);
    auto f = [&](int i) {
      double acc = 0.0;
      for (std::size_t k = 0; k < r_; ++k) acc += c[k] * prefix_[i][k];
      return acc;
    };
    // With r == 1 the first endpoint is fixed by ends[0].
    const bool fixed_a = r_ == 1;
    int arg_min = lo, arg_max = lo;
    double f_min = f(lo), f_max = f_min;
    for (int b = lo + 1; b <= n_; ++b) {
      const double fb = f(b);
      double det = fb - f_min;
      int a = arg_min;
      const double other = f_max - fb;
      if (other > det || (other == det && arg_max < a)) det = other, a = arg_max;
      if (fixed_a) {
        det = std::abs(fb - f(lo));
        a = lo;
      }
      Candidate cand;
      cand.det = det;
      cand.ends = ends;
      if (!fixed_a) cand.ends.push_back(a);
      cand.ends.push_back(b);
      if (better(cand, best)) best = std::move(cand);
      if (!fixed_a) {
        if (fb < f_min) f_min = fb, arg_min = b;
        if (fb > f_max) f_max = fb, arg_max = b;
      }
    }
  }

  const std::vector<std::vector<double>>& prefix_;
  std::size_t r_;
  int n_;
};

double det_of(const HorizontalPath& p, const std::vector<double>& ends, std::size_t r,
              std::vector<std::vector<double>>* increments = nullptr) {
  std::vector<std::vector<double>> cols;
  for (std::size_t i = 0; i < r; ++i) {
    const std::vector<double> pa = p.projection(ends[2 * i]);
    std::vector<double> pb = p.projection(ends[2 * i + 1]);
    for (std::size_t k = 0; k < r; ++k) pb[k] -= pa[k];
    cols.push_back(std::move(pb));
  }
  const double d = std::abs(linalg::determinant(linalg::Matrix::from_columns(cols)));
  if (increments) *increments = std::move(cols);
  return d;
}

}  // namespace

IntervalSelection select_intervals(const HorizontalPath& p, double s, double t, int depth) {
  require(s < t, ErrorKind::InvalidArgument, "select_intervals: s < t required");
  require(depth >= 1 && depth <= 12, ErrorKind::InvalidArgument,
          "select_intervals: grid depth in [1, 12]");
  const std::size_t r = p.group()->rank();
  const int n = 1 << depth;
  const double len = t - s;

  std::vector<double> times(static_cast<std::size_t>(n) + 1);
  std::vector<std::vector<double>> prefix(times.size());
  for (int i = 0; i <= n; ++i) {
    times[i] = i == n ? t : s + len * static_cast<double>(i) / static_cast<double>(n);
    prefix[i] = p.projection(times[i]);
  }

  const GridSearch search(prefix, r);
  std::vector<Candidate> per_start(static_cast<std::size_t>(n));
  parallel_for(static_cast<std::size_t>(n),
               [&](std::size_t a0) { per_start[a0] = search.run_from(static_cast<int>(a0)); });
  Candidate best;
  for (const Candidate& c : per_start)
    if (better(c, best)) best = c;

  std::vector<double> ends(best.ends.size());
  for (std::size_t i = 0; i < ends.size(); ++i) ends[i] = times[best.ends[i]];
  double det = det_of(p, ends, r);

  // Coordinate ascent on the endpoints with halving steps.
  for (double h = len / n / 2.0; h > len / n * std::ldexp(1.0, -12); h *= 0.5) {
    bool improved = true;
    for (int sweeps = 0; improved && sweeps < 100; ++sweeps) {
      improved = false;
      for (std::size_t k = 0; k < ends.size(); ++k)
        for (double sign : {-1.0, 1.0}) {
          const double cand = ends[k] + sign * h;
          const double lo = k == 0 ? s : ends[k - 1];
          const double hi = k + 1 == ends.size() ? t : ends[k + 1];
          // Interval starts (even k) stay strictly below their end; ends strictly above.
          const bool ok = (k % 2 == 0) ? (cand >= lo && cand < hi) : (cand > lo && cand <= hi);
          if (!ok) continue;
          std::vector<double> trial = ends;
          trial[k] = cand;
          const double d = det_of(p, trial, r);
          // Relative margin: exact ties stay put whatever the rounding, so
          // the search commutes with dilations.
          if (d > det * (1.0 + 1e-12)) {
            det = d;
            ends = std::move(trial);
            improved = true;
          }
        }
    }
  }

  IntervalSelection sel;
  sel.grid_depth = depth;
  sel.det = det_of(p, ends, r, &sel.increments);
  for (std::size_t i = 0; i < r; ++i) sel.intervals.emplace_back(ends[2 * i], ends[2 * i + 1]);
  const double scale = std::pow(len, static_cast<double>(r));
  if (!(sel.det >= 1e-12 * scale))
    fail(ErrorKind::DegenerateDirections,
         "select_intervals: projected increments are degenerate (det " + std::to_string(sel.det) +
             ")");
  sel.c_meas = sel.det / scale;
  sel.lower_bound_ok = true;
  for (const auto& d : sel.increments)
    sel.lower_bound_ok =
        sel.lower_bound_ok && linalg::norm(d) >= sel.c_meas * len * (1.0 - 1e-12);
  return sel;
}

}  // namespace carnot

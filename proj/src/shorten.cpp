#include "carnot/shorten.hpp"

#include <algorithm>
#include <cmath>

#include "carnot/errors.hpp"
#include "carnot/parallel.hpp"

namespace carnot {

double ShortenParams::window(int k) const {
  require(k >= 1 && k <= static_cast<int>(rho.size()), ErrorKind::InvalidArgument,
          "window index out of range");
  if (k == 1) return eta;
  return unit * std::pow(eta / unit, rho[k - 1]);
}

bool params_valid(const std::vector<double>& rho, double beta) {
  if (rho.empty() || rho[0] != 1.0 || beta < 0.0) return false;
  for (std::size_t i = 1; i < rho.size(); ++i)
    if (!(rho[i] < rho[i - 1] && rho[i] > 0.0)) return false;
  for (std::size_t k = 1; k < rho.size(); ++k) {
    const double kk = static_cast<double>(k);
    if (!(((kk + 1.0) * rho[k - 1] - rho[k]) / kk > 1.0 + beta)) return false;
  }
  return true;
}

ShortenParams choose_params(int s, double beta, double rho_s) {
  require(s >= 1, ErrorKind::InvalidArgument, "choose_params: step >= 1");
  require(rho_s > 0.0 && rho_s < 1.0, ErrorKind::InvalidArgument,
          "choose_params: rho_s must lie in (0, 1)");
  require(beta >= 0.0, ErrorKind::InvalidArgument, "choose_params: beta >= 0");
  ShortenParams p;
  p.beta = beta;
  if (s == 1) {
    p.rho = {1.0};
    return p;
  }
  // rho_k = m_k + a_k * slack, with m_s = rho_s and a_s = 0.
  std::vector<double> m(static_cast<std::size_t>(s) + 1), a(m.size());
  m[s] = rho_s;
  a[s] = 0.0;
  for (int k = s - 1; k >= 1; --k) {
    m[k] = (m[k + 1] + k + k * beta) / (k + 1);
    a[k] = 1.0 + a[k + 1] / (k + 1);
  }
  const double slack = (1.0 - m[1]) / a[1];
  if (!(slack > 0.0))
    fail(ErrorKind::Infeasible, "choose_params: beta too large for the requested rho_s");
  p.rho.assign(static_cast<std::size_t>(s), 0.0);
  p.rho[0] = 1.0;
  for (int k = 2; k < s; ++k) p.rho[k - 1] = m[k] + a[k] * slack;
  p.rho[s - 1] = rho_s;
  if (!params_valid(p.rho, beta))
    fail(ErrorKind::Infeasible, "choose_params: back-solved exponents violate the constraints");
  return p;
}

BracketDecomposition bracket_decompose(const StratifiedAlgebra& alg, const AlgebraVector& e, int k) {
  require(k >= 1 && k < alg.step(), ErrorKind::InvalidArgument, "bracket_decompose: 1 <= k < s");
  require(alg.lowest_layer(e - alg.project(k + 1, e), 0.0) > alg.step(), ErrorKind::InvalidArgument,
          "bracket_decompose: input must lie in layer k+1");
  const std::size_t r = alg.rank();
  const std::size_t lo = alg.layer_begin(k), dk = alg.layer_end(k) - lo;

  BracketDecomposition out;
  if (e.is_zero()) {
    out.y.assign(r, alg.zero());
    return out;
  }
  std::vector<std::vector<double>> columns;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t q = 0; q < dk; ++q)
      columns.push_back(alg.layer_coords(k + 1, alg.bracket(alg.basis(lo + q), alg.basis(i))));
  const std::vector<double> x =
      linalg::min_norm_solve(linalg::Matrix::from_columns(columns), alg.layer_coords(k + 1, e));

  AlgebraVector recon = alg.zero();
  double biggest = 0.0;
  for (std::size_t i = 0; i < r; ++i) {
    out.y.push_back(alg.from_layer_coords(k, std::span<const double>(x.data() + i * dk, dk)));
    biggest = std::max(biggest, out.y.back().norm());
    recon += alg.bracket(out.y.back(), alg.basis(i));
  }
  out.residual = (recon - e).max_abs();
  out.ratio = biggest / e.norm();
  return out;
}

linalg::Matrix coefficients_solve(const std::vector<std::vector<double>>& increments) {
  const linalg::Matrix d = linalg::Matrix::from_columns(increments);
  require(d.rows() == d.cols(), ErrorKind::DimensionMismatch,
          "coefficients_solve: need r increments in g_1");
  return linalg::inverse(d).transpose();
}

Defect defect(const HorizontalPath& original, const HorizontalPath& current, int k,
              const ShortenParams& params) {
  const GroupPtr& g = original.group();
  const StratifiedAlgebra& alg = g->algebra();
  Defect out;
  out.e = g->product(g->inverse(original.endpoint()), current.endpoint()).log;
  for (int j = 1; j <= alg.step(); ++j) {
    out.layer_norms.push_back(alg.project(j, out.e).norm());
    if (j <= k)
      out.lower_residual = std::max(out.lower_residual, alg.project(j, out.e).max_abs());
  }
  if (k >= 1 && k <= static_cast<int>(params.rho.size()))
    out.scale = std::pow(params.unit, k + 1) *
                std::pow(params.eta / params.unit, (k + 1) * params.rho[k - 1]);
  if (out.lower_residual > 1e-8)
    fail(ErrorKind::Internal, "defect: layers <= " + std::to_string(k) +
                                  " do not vanish (residual " +
                                  std::to_string(out.lower_residual) + ")");
  return out;
}

const char* to_string(ShortenStatus s) {
  return s == ShortenStatus::Shortened ? "shortened" : "no_net_gain";
}

namespace {

double projection_gap(const HorizontalPath& x, double tx, const HorizontalPath& y, double ty) {
  const std::vector<double> px = x.projection(tx), py = y.projection(ty);
  double m = 0.0;
  for (std::size_t i = 0; i < px.size(); ++i) m = std::max(m, std::abs(px[i] - py[i]));
  return m;
}

// Property (vi): the tails of the projection agree with the tails of the
// original after the time shift T - T_k.
double tail_error(const HorizontalPath& original, const HorizontalPath& cur, double w,
                  bool symmetric) {
  const int n = 32;
  const double lag = original.b() - cur.b();
  double worst = 0.0;
  const double lo = (symmetric ? 0.0 : cur.a()) + 2.0 * w;
  if (lo < cur.b())
    for (int i = 0; i <= n; ++i) {
      const double t = lo + (cur.b() - lo) * i / n;
      worst = std::max(worst, projection_gap(cur, t, original, std::min(t + lag, original.b())));
    }
  if (symmetric && -2.0 * w > cur.a())
    for (int i = 0; i <= n; ++i) {
      const double t = cur.a() + (-2.0 * w - cur.a()) * i / n;
      worst = std::max(worst, projection_gap(cur, t, original, std::max(t - lag, original.a())));
    }
  return worst;
}

// Property (vii): sup |projection(cur) - projection(original)| on the common domain.
double projection_deviation(const HorizontalPath& original, const HorizontalPath& cur) {
  const double lo = std::max(original.a(), cur.a()), hi = std::min(original.b(), cur.b());
  const int n = 256;
  double worst = 0.0;
  for (int i = 0; i <= n && hi >= lo; ++i) {
    const double t = lo + (hi - lo) * i / n;
    worst = std::max(worst, projection_gap(cur, t, original, t));
  }
  return worst;
}

ShortenResult run(const HorizontalPath& p, const ShortenParams& params, bool symmetric) {
  const GroupPtr& g = p.group();
  const StratifiedAlgebra& alg = g->algebra();
  const int s = alg.step();
  require(g->rank() >= 2, ErrorKind::InvalidArgument, "shorten: rank >= 2 required");
  require(static_cast<int>(params.rho.size()) == s, ErrorKind::InvalidArgument,
          "shorten: rho needs one exponent per layer");
  if (!params_valid(params.rho, params.beta))
    fail(ErrorKind::Infeasible, "shorten: exponents violate ((k+1) rho_k - rho_{k+1})/k > 1 + beta");
  require(params.eta > 0.0 && params.unit > 0.0, ErrorKind::InvalidArgument,
          "shorten: eta and unit must be positive");
  require(p.is_arclength(1e-12), ErrorKind::InvalidArgument,
          "shorten: input must be parametrized by arclength");
  if (symmetric)
    require(std::abs(p.a() + p.b()) <= 1e-12 * std::max(1.0, p.b()), ErrorKind::InvalidArgument,
            "shorten_symmetric: domain must be symmetric");

  ShortenResult res{p, {}};
  SurgeryLedger& L = res.ledger;
  L.params = params;
  L.params.symmetric = symmetric;
  L.original_length = p.length();

  auto window = [&](int k) {
    const double w = params.window(k);
    return symmetric ? std::pair{-w, w} : std::pair{p.a(), p.a() + w};
  };
  const auto [c0, c1] = window(1);
  require(c0 >= p.a() && c1 <= p.b(), ErrorKind::OutOfDomain, "shorten: eta exceeds the domain");

  L.initial_excess = excess(p, c0, c1).value;
  if (L.initial_excess == 0.0 || L.initial_excess < params.epsilon) {
    L.status = ShortenStatus::NoNetGain;
    L.message = "excess precondition fails on the cut window";
    L.cut_length = L.original_length;
    L.endpoint_residual_by_layer.assign(static_cast<std::size_t>(s), 0.0);
    return res;
  }

  HorizontalPath cur = symmetric ? cut_sym(p, c0, c1) : cut(p, c0, c1);
  L.cut_length = cur.length();
  L.gross_gain = L.original_length - L.cut_length;
  L.cut_tail_error = tail_error(p, cur, params.window(1), symmetric);

  for (int k = 1; k < s; ++k) {
    StageRecord st;
    st.k = k;
    st.defect = defect(p, cur, k, params);
    const double e0 = params.rho[k - 1], e1 = params.rho[k];
    st.cost_scale = params.unit * std::pow(params.eta / params.unit, ((k + 1) * e0 - e1) / k);
    const AlgebraVector e = alg.project(k + 1, st.defect.e);
    const double length_before = cur.length();

    if (!e.is_zero()) {
      const BracketDecomposition dec = bracket_decompose(alg, e, k);
      st.y = dec.y;
      const auto [w0, w1] = window(k + 1);
      require(w0 >= cur.a() && w1 <= cur.b(), ErrorKind::OutOfDomain,
              "shorten: correction window exceeds the current domain");

      IntervalSelection sel;
      linalg::Matrix c;
      for (int depth = params.grid_depth;; ++depth) {
        try {
          sel = select_intervals(cur, w0, w1, depth);
          c = coefficients_solve(sel.increments);
          double dmax = 0.0;
          for (const auto& d : sel.increments) dmax = std::max(dmax, linalg::norm(d));
          if (c.max_abs() * dmax > 1e12)
            fail(ErrorKind::Singular, "shorten: increment matrix is ill-conditioned");
          break;
        } catch (const Error& err) {
          const bool retry = err.kind() == ErrorKind::DegenerateDirections ||
                             err.kind() == ErrorKind::Singular;
          if (!retry || depth > params.grid_depth) throw;
        }
      }
      st.intervals = sel.intervals;
      st.det = sel.det;
      st.c_meas = sel.c_meas;
      st.grid_depth = sel.grid_depth;
      st.c_max = c.max_abs();

      const std::size_t r = g->rank();
      std::vector<Device> devices;
      for (std::size_t j = 0; j < r; ++j) {
        AlgebraVector z = alg.zero();
        for (std::size_t i = 0; i < r; ++i) z += c(i, j) * st.y[i];
        st.z.push_back(z);
        devices.push_back({sel.intervals[j].first, sel.intervals[j].second, -z});
      }
      cur = symmetric ? dev_iter_sym(cur, devices).path : dev_iter(cur, devices).path;
    }

    st.cost = cur.length() - length_before;
    st.running_length = cur.length();
    st.start_fixed = cur.start() == p.start() && (symmetric || cur.a() == p.a());
    {
      const GroupElement d = g->product(g->inverse(p.endpoint()), cur.endpoint());
      for (int j = 1; j <= k + 1; ++j)
        st.next_lower_residual = std::max(st.next_lower_residual, alg.project(j, d.log).max_abs());
    }
    st.tail_projection_error = tail_error(p, cur, params.window(k + 1), symmetric);
    st.projection_deviation = projection_deviation(p, cur);
    L.total_cost += st.cost;
    L.stages.push_back(std::move(st));
  }

  const AlgebraVector final_defect = g->product(g->inverse(p.endpoint()), cur.endpoint()).log;
  for (int j = 1; j <= s; ++j)
    L.endpoint_residual_by_layer.push_back(alg.project(j, final_defect).max_abs());
  L.endpoint_residual = final_defect.max_abs();
  L.net_gain = L.gross_gain - L.total_cost;
  L.status = L.net_gain > 0.0 ? ShortenStatus::Shortened : ShortenStatus::NoNetGain;
  L.message = L.net_gain > 0.0 ? "shorter curve with the same endpoints"
                               : "correction cost exceeds the cut gain at this eta";
  res.path = std::move(cur);
  return res;
}

}  // namespace

ShortenResult shorten_one_sided(const HorizontalPath& p, const ShortenParams& params) {
  return run(p, params, false);
}

ShortenResult shorten_symmetric(const HorizontalPath& p, const ShortenParams& params) {
  return run(p, params, true);
}

std::vector<SweepRow> shorten_sweep(const HorizontalPath& p, const ShortenParams& params,
                                    const std::vector<double>& etas) {
  std::vector<SweepRow> rows(etas.size());
  parallel_for(etas.size(), [&](std::size_t i) {
    ShortenParams q = params;
    q.eta = etas[i];
    const SurgeryLedger L = shorten(p, q).ledger;
    rows[i] = {etas[i], L.gross_gain, L.total_cost, L.net_gain, L.endpoint_residual};
  });
  return rows;
}

double fit_exponent(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size(), ErrorKind::DimensionMismatch, "fit_exponent: size mismatch");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
    ++n;
  }
  require(n >= 2, ErrorKind::InvalidArgument, "fit_exponent: need two positive points");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace carnot

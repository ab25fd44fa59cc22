// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "carnot/blowup.hpp"
#include "carnot/excess.hpp"
#include "carnot/fixtures.hpp"
#include "carnot/identity_suite.hpp"
#include "carnot/io.hpp"
#include "carnot/shorten.hpp"
#include "carnot/surgery.hpp"
#include "oracles.hpp"

using namespace carnot;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double diff(const AlgebraVector& a, const AlgebraVector& b) { return (a - b).max_abs(); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void need(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

Outcome identity_suites() {
  Outcome o;
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (const GroupPtr& g : suite_groups())
    for (const SuiteResult& r : run_identity_suite(g, 1000, 2024, 1e-9)) {
      o.need(r.pass(), r.group + " " + r.identity + " residual " + fmt(r.max_residual));
      worst = std::max(worst, r.max_residual);
    }
  const double secs = seconds_since(t0);
  o.need(secs <= 30.0, "runtime " + fmt(secs) + " s");
  o.note("max residual " + fmt(worst) + ", " + fmt(secs) + " s");
  return o;
}

Outcome bch() {
  Outcome o;
  double closed = 0.0, product = 0.0, assoc = 0.0;
  std::mt19937_64 rng(7);
  for (const GroupPtr& g : {CarnotGroup::make(heisenberg(1)), CarnotGroup::make(heisenberg(2)),
                            CarnotGroup::make(free_nilpotent(3, 2))}) {
    const StratifiedAlgebra& alg = g->algebra();
    for (int i = 0; i < 1000; ++i) {
      const AlgebraVector x = fixtures::random_vector(alg, rng), y = fixtures::random_vector(alg, rng);
      closed = std::max(closed, diff(g->bch(x, y), x + y + 0.5 * alg.bracket(x, y)));
    }
  }
  const GroupPtr h = CarnotGroup::make(heisenberg(1));
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng), y = u(rng), z = u(rng), x2 = u(rng), y2 = u(rng), z2 = u(rng);
    product = std::max(product, diff(h->product({{x, y, z}}, {{x2, y2, z2}}).log,
                                     {x + x2, y + y2, z + z2 + 0.5 * (x * y2 - y * x2)}));
  }
  for (const GroupPtr& g : suite_groups()) assoc = std::max(assoc, associativity_residual(g, 1000, 99));
  o.need(closed <= 1e-12, "step-2 closed form " + fmt(closed));
  o.need(product <= 1e-12, "heisenberg product " + fmt(product));
  o.need(assoc <= 1e-10, "associativity " + fmt(assoc));
  o.note("closed form " + fmt(closed) + ", product " + fmt(product) + ", associativity " + fmt(assoc));
  return o;
}

Outcome excess_oracle() {
  Outcome o;
  const GroupPtr h = CarnotGroup::make(heisenberg(1));
  const ExcessReport r = excess(fixtures::corner(h), 0.0, 2.0);
  const double target = 1.0 / std::sqrt(2.0);
  const MeshMinimum mesh = excess_by_mesh(r.gram, 10000);
  o.need(std::abs(r.value - target) <= 1e-9, "corner excess " + fmt(r.value));
  o.need(std::abs(mesh.value - r.value) <= 1e-6, "mesh route " + fmt(mesh.value));
  const std::vector<double> v{0.28, -0.96};
  o.need(excess(fixtures::line(h, v, 3.0), 0.0, 3.0).value == 0.0, "line excess not exactly 0");
  double scaling = 0.0;
  std::mt19937_64 rng(17);
  for (const GroupPtr& g : suite_groups())
    for (int i = 0; i < 20; ++i) {
      const HorizontalPath p = fixtures::random_arclength(g, 6, rng);
      const GroupElement x = g->exp(fixtures::random_vector(g->algebra(), rng));
      const Window w{{p.a() + 0.2 * p.duration(), p.a() + 0.7 * p.duration()}};
      scaling = std::max(scaling, excess_scaling_check(p, w, 0.5 + i * 0.25, x).max());
    }
  o.need(scaling <= 1e-10, "scaling identities " + fmt(scaling));
  o.note("corner " + std::to_string(r.value) + ", mesh gap " + fmt(std::abs(mesh.value - r.value)) +
         ", scaling " + fmt(scaling));
  return o;
}

Outcome cut_inequality() {
  Outcome o;
  const GroupPtr h = CarnotGroup::make(heisenberg(1));
  const CutGain c = cut_gain_bound(fixtures::corner(h), 0.0, 2.0);
  o.need(std::abs(c.gain - (2.0 - std::sqrt(2.0))) <= 1e-15, "corner gain " + fmt(c.gain));
  o.need(c.bound == 0.5, "corner bound " + fmt(c.bound));
  o.need(c.gain >= c.bound, "corner inequality");
  std::mt19937_64 rng(29);
  const std::vector<GroupPtr> groups = suite_groups();
  int violations = 0;
  double slack = INFINITY;
  for (int i = 0; i < 1000; ++i) {
    const GroupPtr& g = groups[static_cast<std::size_t>(i) % groups.size()];
    const HorizontalPath p = fixtures::random_arclength(g, 2 + i % 9, rng);
    std::uniform_real_distribution<double> u(p.a(), p.b());
    double s = u(rng), t = u(rng);
    if (s > t) std::swap(s, t);
    const CutGain k = cut_gain_bound(p, s, t);
    if (!k.holds(1e-12)) ++violations;
    slack = std::min(slack, k.gain - k.bound);
  }
  o.need(violations == 0, std::to_string(violations) + " fuzz violations");
  o.note("corner gain " + fmt(c.gain) + " >= 0.5, fuzz min slack " + fmt(slack));
  return o;
}

Outcome connector_contract() {
  Outcome o;
  double residual = 0.0, scaling = 0.0, central = 0.0;
  std::mt19937_64 rng(37);
  for (const GroupPtr& g : suite_groups())
    for (int i = 0; i < 500; ++i) {
      const AlgebraVector y = fixtures::random_vector(g->algebra(), rng);
      const Connector c = connect_to(g, y);
      residual = std::max(residual, c.residual.max_abs());
      if (i % 10 == 0) {
        const double lam = 0.5 + 0.3 * (i / 10);
        const Connector d = connect_to(g, g->algebra().dilate(lam, y));
        scaling = std::max(scaling, std::abs(d.length - lam * c.length) / std::max(1.0, c.length));
      }
    }
  const GroupPtr h = CarnotGroup::make(heisenberg(1));
  for (double c : {1e-4, 0.01, 0.5, 1.0, 2.0, 9.0})
    central = std::max(central, std::abs(connect_to(h, {0, 0, c}).length - 4.0 * std::sqrt(c)));
  o.need(residual <= 1e-9, "endpoint residual " + fmt(residual));
  o.need(scaling <= 1e-10, "dilation scaling " + fmt(scaling));
  o.need(central <= 1e-12, "central length " + fmt(central));
  o.note("residual " + fmt(residual) + ", scaling " + fmt(scaling) + ", 4 sqrt(c) gap " + fmt(central));
  return o;
}

Outcome shortening() {
  Outcome o;
  const auto t0 = Clock::now();
  const GroupPtr h = CarnotGroup::make(heisenberg(1));
  const HorizontalPath corner = fixtures::by_name("corner_centered", h);
  ShortenParams params;
  params.beta = 0.05;
  params.rho = {1.0, 0.5};
  params.symmetric = true;
  const std::vector<double> etas{0.4, 0.2, 0.1, 0.05};
  std::vector<double> costs;
  double worst_defect = 0.0, worst_gross = 0.0, worst_residual = 0.0;
  SurgeryLedger smallest;
  for (double eta : etas) {
    params.eta = eta;
    const SurgeryLedger L = shorten(corner, params).ledger;
    if (L.stages.empty()) {
      o.need(false, "no correction stage at eta " + fmt(eta));
      return o;
    }
    worst_defect = std::max(worst_defect, diff(L.stages[0].defect.e, {0, 0, -eta * eta / 2}));
    worst_gross = std::max(worst_gross, std::abs(L.gross_gain - (2.0 - std::sqrt(2.0)) * eta));
    worst_residual = std::max(worst_residual, L.endpoint_residual);
    costs.push_back(L.total_cost);
    smallest = L;
  }
  const double exponent = fit_exponent(etas, costs);
  const double secs = seconds_since(t0);
  o.need(worst_defect <= 1e-12, "defect after cut " + fmt(worst_defect));
  o.need(worst_residual <= 1e-8, "endpoint residual " + fmt(worst_residual));
  o.need(smallest.net_gain > 0.0, "net gain at eta 0.05 " + fmt(smallest.net_gain));
  o.need(worst_gross <= 1e-10, "gross gain " + fmt(worst_gross));
  o.need(exponent > 1.0 + params.beta, "cost exponent " + fmt(exponent));
  o.need(secs <= 10.0, "runtime " + fmt(secs) + " s");
  o.note("defect gap " + fmt(worst_defect) + ", residual " + fmt(worst_residual) + ", net(0.05) " +
         fmt(smallest.net_gain) + ", cost exponent " + fmt(exponent) + ", " + fmt(secs) + " s");
  return o;
}

Outcome blowup() {
  Outcome o;
  const std::vector<double> scales{1.0, 0.5, 0.25, 0.125, 0.0625};
  const GroupPtr h = CarnotGroup::make(heisenberg(1));
  const BlowupProfile circle = excess_profile(fixtures::circle_lift(h), 0.0, scales);
  double oracle_gap = 0.0;
  for (const ScaleRow& r : circle.rows) {
    const double l = r.scale;
    const double s2 = oracle::simpson([](double t) { return std::sin(t) * std::sin(t); }, -l, l, 4000);
    const double c2 = oracle::simpson([](double t) { return std::cos(t) * std::cos(t); }, -l, l, 4000);
    oracle_gap = std::max(oracle_gap, std::abs(r.excess - std::sqrt(std::min(s2, c2) / (2 * l))));
  }
  bool monotone = true;
  for (std::size_t i = 1; i < circle.rows.size(); ++i)
    monotone = monotone && circle.rows[i].excess < circle.rows[i - 1].excess &&
               circle.rows[i].residual < circle.rows[i - 1].residual;
  const ScaleRow& last = circle.rows.back();
  o.need(monotone, "circle profile not monotone");
  o.need(last.excess < 0.05 && last.residual < 0.05,
         "circle at 1/16: excess " + fmt(last.excess) + ", residual " + fmt(last.residual));
  o.need(oracle_gap <= 1e-4, "circle excess vs quadrature " + fmt(oracle_gap));

  const BlowupProfile corner =
      excess_profile(fixtures::by_name("corner_centered", h), 0.0, scales);
  double min_res = INFINITY;
  for (const ScaleRow& r : corner.rows) min_res = std::min(min_res, r.residual);
  o.need(min_res >= 0.7, "corner residual " + fmt(min_res));
  o.need(!corner.tangent_line, "tangent line declared at the corner");
  o.note("circle excess/residual at 1/16 " + fmt(last.excess) + "/" + fmt(last.residual) +
         ", quadrature gap " + fmt(oracle_gap) + ", corner min residual " + fmt(min_res));
  return o;
}

// All artifacts the CLI emits, produced in-process.
std::string artifacts() {
  std::ostringstream out;
  std::vector<SuiteResult> suites;
  for (const GroupPtr& g : suite_groups())
    for (const SuiteResult& r : run_identity_suite(g, 100, 5, 1e-9)) suites.push_back(r);
  out << io::dump(io::suite_to_json(suites));
  const GroupPtr h = CarnotGroup::make(heisenberg(1));
  const HorizontalPath corner = fixtures::by_name("corner_centered", h);
  ShortenParams params = choose_params(2, 0.05, 0.5);
  params.symmetric = true;
  const ShortenResult r = shorten(corner, params);
  out << io::dump(io::ledger_to_json(r.ledger)) << io::dump(io::curve_to_json(r.path));
  out << io::sweep_csv(shorten_sweep(corner, params, {0.4, 0.2, 0.1, 0.05}));
  const BlowupProfile prof = excess_profile(fixtures::circle_lift(h), 0.0, {1.0, 0.5, 0.25});
  out << io::dump(io::profile_to_json(prof)) << io::profile_csv(prof);
  const GroupPtr f = CarnotGroup::make(free_nilpotent(3, 2));
  std::mt19937_64 rng(3);
  const HorizontalPath p = fixtures::random_arclength(f, 6, rng);
  out << io::dump(io::selection_to_json(select_intervals(p, p.a(), p.b(), 4)));
  return out.str();
}

Outcome determinism() {
  Outcome o;
  setenv("CARNOT_THREADS", "1", 1);
  const std::string a = artifacts();
  setenv("CARNOT_THREADS", "4", 1);
  const std::string b = artifacts();
  unsetenv("CARNOT_THREADS");
  const std::string c = artifacts();
  o.need(a == b && b == c, "artifacts differ between runs");
  o.note(std::to_string(a.size()) + " bytes identical over three runs (1, 4, default threads)");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"algebraic identity suite", identity_suites},
      {"BCH correctness", bch},
      {"excess oracle", excess_oracle},
      {"cut inequality", cut_inequality},
      {"connector contract", connector_contract},
      {"shortening pipeline (H1 corner, symmetric)", shortening},
      {"blow-up diagnostics", blowup},
      {"determinism", determinism},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    all = all && o.pass;
    std::printf("%s criterion %zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}

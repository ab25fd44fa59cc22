// carnot: command-line front end for the Carnot-group surgery library.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "carnot/blowup.hpp"
#include "carnot/errors.hpp"
#include "carnot/excess.hpp"
#include "carnot/fixtures.hpp"
#include "carnot/identity_suite.hpp"
#include "carnot/io.hpp"
#include "carnot/kernels.hpp"
#include "carnot/shorten.hpp"
#include "carnot/surgery.hpp"

using namespace carnot;
using io::json;

namespace {

// Exit codes: one per error kind, plus a failed identity suite.
constexpr int kSuiteFailure = 20;
constexpr int kUnknownFailure = 70;

int exit_code(ErrorKind kind) { return 10 + static_cast<int>(kind); }

void error_record(const std::string& kind, const std::string& message, int code) {
  const json rec = {{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}};
  std::cerr << rec.dump() << "\n";
}

json meta(const std::string& command) { return {{"tool", "carnot"}, {"command", command}}; }

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    io::write_file(out, text);
}

Window pairs(const std::vector<double>& flat, const char* what) {
  require(flat.size() % 2 == 0, ErrorKind::InvalidArgument, what);
  Window w;
  for (std::size_t i = 0; i < flat.size(); i += 2) w.emplace_back(flat[i], flat[i + 1]);
  return w;
}

StratifiedAlgebra load_algebra(const std::string& spec) {
  // A readable JSON file, else a builtin name.
  if (spec.find(".json") != std::string::npos) return io::algebra_from_json(io::read_file(spec));
  return builtin(spec);
}

HorizontalPath load_curve(const std::string& path) { return io::curve_from_json(io::read_file(path)); }

json points_json(const HorizontalPath& p) {
  json pts = json::array();
  for (double t : p.knots()) pts.push_back(p.eval(t).log.coords());
  return pts;
}

struct Options {
  // shared
  std::string out;
  std::string curve;
  // each command owns its tolerance so defaults never collide
  double algebra_tol = 1e-12;
  double suite_tol = 1e-9;
  double tangent_tol = 1e-2;
  // algebra / curve
  std::string algebra = "heisenberg";
  std::string fixture = "corner";
  double a = 0.0;
  // excess / select-intervals
  std::vector<double> window;
  std::vector<double> scales;
  double anchor = 0.0;
  bool csv = false;
  int depth = 6;
  // surgery check
  std::size_t cases = 1000;
  std::uint64_t seed = 1;
  std::vector<std::string> groups;
  // shorten
  double eta = 0.1;
  double eps = 0.0;
  double beta = 0.05;
  double rho_last = 0.5;
  std::vector<double> rho;
  double unit = 1.0;
  bool symmetric = false;
  std::vector<double> sweep;
  std::string curve_out;
  std::string csv_out;
  // blowup
  double window_n = 1.0;
  bool one_sided = false;
  std::string isa = "auto";
};

int cmd_algebra_validate(const Options& o) {
  const StratifiedAlgebra alg = load_algebra(o.algebra);
  const ValidationReport r = alg.check(o.algebra_tol);
  json j = meta("algebra validate");
  j["tolerance"] = o.algebra_tol;
  j["algebra"] = io::algebra_to_json(alg);
  j["dim"] = alg.dim();
  j["step"] = alg.step();
  j["validation"] = io::validation_to_json(r);
  emit(o.out, io::dump(j));
  if (!r.ok) fail(ErrorKind::Validation, r.message);
  return 0;
}

int cmd_curve_make(const Options& o) {
  const GroupPtr g = CarnotGroup::make(load_algebra(o.algebra));
  HorizontalPath p = fixtures::by_name(o.fixture, g);
  if (o.a != 0.0) p = p.shift(o.a - p.a());
  emit(o.out, io::dump(io::curve_to_json(p)));
  return 0;
}

int cmd_curve_show(const Options& o) {
  emit(o.out, io::dump(io::curve_to_json(load_curve(o.curve))));
  return 0;
}

int cmd_curve_lift(const Options& o) {
  const HorizontalPath p = load_curve(o.curve);
  json j = meta("curve lift");
  j["curve"] = io::curve_to_json(p);
  j["domain"] = {p.a(), p.b()};
  j["length"] = p.length();
  j["arclength"] = p.is_arclength();
  j["knots"] = p.knots();
  j["points"] = points_json(p);
  j["endpoint"] = p.endpoint().log.coords();
  j["endpoint_fold"] = p.fold_endpoint().log.coords();
  emit(o.out, io::dump(j));
  return 0;
}

int cmd_excess(const Options& o) {
  const HorizontalPath p = load_curve(o.curve);
  if (!o.scales.empty()) {
    // Scale sweep around the anchor: windows [t - l, t + l] clipped to the domain.
    std::vector<ExcessReport> reports;
    for (double l : o.scales) {
      require(l > 0.0, ErrorKind::InvalidArgument, "excess: scales must be positive");
      reports.push_back(excess(p, std::max(p.a(), o.anchor - l), std::min(p.b(), o.anchor + l)));
    }
    if (o.csv) {
      emit(o.out, io::excess_sweep_csv(o.scales, reports));
    } else {
      json j = meta("excess");
      j["anchor"] = o.anchor;
      j["reports"] = json::array();
      for (std::size_t i = 0; i < reports.size(); ++i) {
        json r = io::excess_to_json(reports[i]);
        r["scale"] = o.scales[i];
        j["reports"].push_back(r);
      }
      emit(o.out, io::dump(j));
    }
    return 0;
  }
  const Window w = o.window.empty() ? Window{{p.a(), p.b()}}
                                    : pairs(o.window, "excess: --window takes pairs s t");
  const ExcessReport r = excess(p, w);
  const MeshMinimum mesh = excess_by_mesh(r.gram);
  json j = meta("excess");
  j["excess"] = io::excess_to_json(r);
  j["mesh"] = {{"value", mesh.value}, {"direction", mesh.direction}};
  emit(o.out, io::dump(j));
  return 0;
}

int cmd_select_intervals(const Options& o) {
  const HorizontalPath p = load_curve(o.curve);
  const Window w = o.window.empty() ? Window{{p.a(), p.b()}}
                                    : pairs(o.window, "select-intervals: --window takes s t");
  require(w.size() == 1, ErrorKind::InvalidArgument, "select-intervals: one window only");
  const IntervalSelection s = select_intervals(p, w[0].first, w[0].second, o.depth);
  json j = meta("select-intervals");
  j["window"] = {w[0].first, w[0].second};
  j["selection"] = io::selection_to_json(s);
  emit(o.out, io::dump(j));
  return 0;
}

int cmd_surgery_check(const Options& o) {
  std::vector<GroupPtr> groups;
  if (o.groups.empty())
    groups = suite_groups();
  else
    for (const std::string& name : o.groups) groups.push_back(CarnotGroup::make(builtin(name)));
  json j = meta("surgery check");
  j["seed"] = o.seed;
  j["cases"] = o.cases;
  j["tolerance"] = o.suite_tol;
  j["suites"] = json::array();
  j["associativity"] = json::array();
  bool ok = true;
  for (const GroupPtr& g : groups) {
    const std::vector<SuiteResult> res = run_identity_suite(g, o.cases, o.seed, o.suite_tol);
    for (const json& r : io::suite_to_json(res)) j["suites"].push_back(r);
    for (const SuiteResult& r : res) ok = ok && r.pass();
    const double assoc = associativity_residual(g, o.cases, o.seed);
    j["associativity"].push_back(
        {{"group", g->algebra().name()}, {"max_residual", assoc}, {"tolerance", o.suite_tol}});
    ok = ok && assoc <= o.suite_tol;
  }
  j["pass"] = ok;
  emit(o.out, io::dump(j));
  return ok ? 0 : kSuiteFailure;
}

ShortenParams shorten_params(const Options& o, int step) {
  ShortenParams params;
  if (o.rho.empty()) {
    params = choose_params(step, o.beta, o.rho_last);
  } else {
    require(static_cast<int>(o.rho.size()) == step, ErrorKind::InvalidArgument,
            "shorten: --rho needs one exponent per layer");
    require(params_valid(o.rho, o.beta), ErrorKind::Infeasible,
            "shorten: exponents violate ((k+1) rho_k - rho_{k+1})/k > 1 + beta");
    params.rho = o.rho;
    params.beta = o.beta;
  }
  params.epsilon = o.eps;
  params.eta = o.eta;
  params.grid_depth = o.depth;
  params.unit = o.unit;
  params.symmetric = o.symmetric;
  return params;
}

int cmd_shorten(const Options& o) {
  const HorizontalPath p = load_curve(o.curve);
  const ShortenParams params = shorten_params(o, p.group()->step());
  if (!o.sweep.empty()) {
    const std::vector<SweepRow> rows = shorten_sweep(p, params, o.sweep);
    const std::string csv = io::sweep_csv(rows);
    if (o.csv_out.empty()) {
      emit(o.out, csv);
      return 0;
    }
    io::write_file(o.csv_out, csv);
    // Crossover: the largest eta from which every smaller eta has positive net gain.
    std::vector<std::size_t> order(rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return rows[x].eta < rows[y].eta;
    });
    json crossover = nullptr;
    for (std::size_t i : order) {
      if (!(rows[i].net > 0.0)) break;
      crossover = rows[i].eta;
    }
    std::vector<double> etas, costs, gross;
    for (const SweepRow& r : rows) {
      etas.push_back(r.eta);
      costs.push_back(r.cost);
      gross.push_back(r.gross);
    }
    json j = meta("shorten --sweep");
    SurgeryLedger blank;
    blank.params = params;
    j["params"] = io::ledger_to_json(blank)["params"];
    j["etas"] = o.sweep;
    j["crossover_eta"] = crossover;
    j["cost_exponent"] = fit_exponent(etas, costs);
    j["gross_exponent"] = fit_exponent(etas, gross);
    j["csv"] = o.csv_out;
    emit(o.out, io::dump(j));
    return 0;
  }
  const ShortenResult res = shorten(p, params);
  json j = meta("shorten");
  j["ledger"] = io::ledger_to_json(res.ledger);
  emit(o.out, io::dump(j));
  if (!o.curve_out.empty()) io::write_file(o.curve_out, io::dump(io::curve_to_json(res.path)));
  return 0;
}

int cmd_blowup(const Options& o) {
  const HorizontalPath p = load_curve(o.curve);
  const std::vector<double> scales =
      o.scales.empty() ? std::vector<double>{1.0, 0.5, 0.25, 0.125, 0.0625} : o.scales;
  const BlowupProfile prof = excess_profile(p, o.anchor, scales, o.one_sided, o.window_n, o.tangent_tol);
  for (const std::string& w : prof.warnings) std::cerr << "warning: " << w << "\n";
  if (o.csv) {
    emit(o.out, io::profile_csv(prof));
  } else {
    json j = meta("blowup");
    j["profile"] = io::profile_to_json(prof);
    emit(o.out, io::dump(j));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Carnot-group calculus and curve surgery"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--isa", o.isa, "Kernel set: auto, scalar or avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  auto add_out = [&](CLI::App* c) { c->add_option("-o,--out", o.out, "Output path (default stdout)"); };
  auto add_curve = [&](CLI::App* c) {
    c->add_option("--curve", o.curve, "Curve JSON file")->required()->check(CLI::ExistingFile);
  };

  int (*handler)(const Options&) = nullptr;
  std::string command;
  auto bind = [&](CLI::App* c, int (*h)(const Options&), std::string name) {
    c->callback([&handler, &command, h, name] {
      handler = h;
      command = name;
    });
  };

  CLI::App* alg = app.add_subcommand("algebra", "Algebra tables");
  alg->require_subcommand(1);
  CLI::App* alg_validate = alg->add_subcommand("validate", "Check a structure-constant table");
  alg_validate->add_option("algebra", o.algebra, "Builtin name or algebra JSON file")->required();
  alg_validate->add_option("--tol", o.algebra_tol, "Tolerance")->default_val(1e-12);
  add_out(alg_validate);
  bind(alg_validate, cmd_algebra_validate, "algebra validate");

  CLI::App* curve = app.add_subcommand("curve", "Horizontal curves");
  curve->require_subcommand(1);
  CLI::App* curve_lift = curve->add_subcommand("lift", "Lift controls and report knots, points, length");
  add_curve(curve_lift);
  add_out(curve_lift);
  bind(curve_lift, cmd_curve_lift, "curve lift");
  CLI::App* curve_show = curve->add_subcommand("show", "Print the canonical curve JSON");
  add_curve(curve_show);
  add_out(curve_show);
  bind(curve_show, cmd_curve_show, "curve show");
  CLI::App* curve_make = curve->add_subcommand("make", "Write a fixture curve");
  curve_make->add_option("--fixture", o.fixture,
                         "line, corner, corner_centered, circle_lift, zigzag, dyadic_zigzag")
      ->default_val("corner");
  curve_make->add_option("--algebra", o.algebra, "Builtin name or algebra JSON file")
      ->default_val("heisenberg");
  curve_make->add_option("--a", o.a, "Shift the domain to start at a");
  add_out(curve_make);
  bind(curve_make, cmd_curve_make, "curve make");

  CLI::App* exc = app.add_subcommand("excess", "Excess over a window, or a scale sweep");
  add_curve(exc);
  exc->add_option("--window", o.window, "Interval s t (repeat for a union)")->expected(2)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  exc->add_option("--scales", o.scales, "Sweep half-widths around --anchor");
  exc->add_option("--anchor", o.anchor, "Anchor time for --scales");
  exc->add_flag("--csv", o.csv, "Emit the sweep as CSV");
  add_out(exc);
  bind(exc, cmd_excess, "excess");

  CLI::App* sel = app.add_subcommand("select-intervals", "Ordered subintervals with spanning increments");
  add_curve(sel);
  sel->add_option("--window", o.window, "Interval s t")->expected(2);
  sel->add_option("--depth", o.depth, "Dyadic grid depth")->default_val(6)->check(CLI::Range(1, 12));
  add_out(sel);
  bind(sel, cmd_select_intervals, "select-intervals");

  CLI::App* surgery = app.add_subcommand("surgery", "Surgery calculus");
  surgery->require_subcommand(1);
  CLI::App* check = surgery->add_subcommand("check", "Seeded identity fuzz suites");
  check->add_option("--cases", o.cases, "Cases per identity and group")->default_val(1000);
  check->add_option("--seed", o.seed, "Seed")->default_val(1);
  check->add_option("--tol", o.suite_tol, "Residual tolerance")->default_val(1e-9);
  check->add_option("--group", o.groups, "Builtin group (repeatable; default: the acceptance set)");
  add_out(check);
  bind(check, cmd_surgery_check, "surgery check");

  CLI::App* sh = app.add_subcommand("shorten", "Cut-and-correct shortening pipeline");
  add_curve(sh);
  sh->add_option("--eta", o.eta, "Cut scale")->default_val(0.1);
  sh->add_option("--eps", o.eps, "Required excess on the cut window")->default_val(0.0);
  sh->add_option("--beta", o.beta, "Margin exponent")->default_val(0.05);
  sh->add_option("--rho-last", o.rho_last, "Last exponent; the others are derived")->default_val(0.5);
  sh->add_option("--rho", o.rho, "Explicit exponents rho_1..rho_s");
  sh->add_option("--unit", o.unit, "Window length unit")->default_val(1.0);
  sh->add_option("--depth", o.depth, "Interval grid depth")->default_val(6)->check(CLI::Range(1, 12));
  sh->add_flag("--symmetric", o.symmetric, "Symmetric-domain variant");
  sh->add_option("--sweep", o.sweep, "Run at each eta and emit CSV");
  sh->add_option("--curve-out", o.curve_out, "Write the shortened curve here");
  sh->add_option("--csv", o.csv_out, "Sweep CSV path (the summary JSON then goes to --out)");
  add_out(sh);
  bind(sh, cmd_shorten, "shorten");

  CLI::App* bl = app.add_subcommand("blowup", "Excess and control-residual profile across scales");
  add_curve(bl);
  bl->add_option("--anchor", o.anchor, "Anchor time")->default_val(0.0);
  bl->add_option("--scales", o.scales, "Decreasing scales (default 1 1/2 1/4 1/8 1/16)");
  bl->add_option("--window-n", o.window_n, "Window half-width in scale units")->default_val(1.0);
  bl->add_flag("--one-sided", o.one_sided, "Use [t, t + l N]");
  bl->add_option("--tol", o.tangent_tol, "Tangent-line residual tolerance")->default_val(1e-2);
  bl->add_flag("--csv", o.csv, "Emit CSV");
  add_out(bl);
  bind(bl, cmd_blowup, "blowup");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (o.isa == "scalar") kernels::set_isa(kernels::Isa::Scalar);
    if (o.isa == "avx2") kernels::set_isa(kernels::Isa::Avx2);
    if (!handler) fail(ErrorKind::InvalidArgument, "no command given");
    return handler(o);
  } catch (const Error& e) {
    error_record(to_string(e.kind()), e.what(), exit_code(e.kind()));
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    error_record("Unknown", e.what(), kUnknownFailure);
    return kUnknownFailure;
  }
}

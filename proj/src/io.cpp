#include "carnot/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "carnot/errors.hpp"

namespace carnot::io {

namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, std::string(what) + ": " + e.what());
  }
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json vec(const std::vector<double>& v) { return json(v); }

json window_json(const Window& w) {
  json out = json::array();
  for (const auto& [s, t] : w) out.push_back({s, t});
  return out;
}

bool same_table(const StratifiedAlgebra& x, const StratifiedAlgebra& y) {
  if (x.layer_dims() != y.layer_dims()) return false;
  const std::size_t n = x.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (x.structure(i, j, k) != y.structure(i, j, k)) return false;
  return true;
}

}  // namespace

StratifiedAlgebra algebra_from_json(const json& j) {
  return guarded("algebra", [&]() -> StratifiedAlgebra {
    if (j.is_string()) return builtin(j.get<std::string>());
    if (!j.is_object()) fail(ErrorKind::Parse, "algebra must be a name or an object");
    if (j.contains("builtin")) return builtin(j.at("builtin").get<std::string>());
    std::vector<int> dims = j.at("layer_dims").get<std::vector<int>>();
    std::vector<BracketEntry> entries;
    for (const json& b : j.value("brackets", json::array())) {
      BracketEntry e{b.at("i").get<int>(), b.at("j").get<int>(), {}};
      for (const auto& [k, v] : b.at("coeffs").items()) {
        std::size_t pos = 0;
        const int idx = std::stoi(k, &pos);
        if (pos != k.size()) fail(ErrorKind::Parse, "bracket coefficient key must be an integer");
        e.coeffs.emplace_back(idx, v.get<double>());
      }
      entries.push_back(std::move(e));
    }
    return StratifiedAlgebra::from_table(j.value("name", std::string("user")), std::move(dims),
                                         entries, j.value("tol", 1e-12));
  });
}

json algebra_to_json(const StratifiedAlgebra& alg) {
  json brackets = json::array();
  for (const BracketEntry& e : alg.table()) {
    json coeffs = json::object();
    for (const auto& [k, v] : e.coeffs) coeffs[std::to_string(k)] = v;
    brackets.push_back({{"i", e.i}, {"j", e.j}, {"coeffs", coeffs}});
  }
  return {{"name", alg.name()}, {"layer_dims", alg.layer_dims()}, {"brackets", brackets}};
}

HorizontalPath curve_from_json(const json& j) {
  return guarded("curve", [&]() -> HorizontalPath {
    GroupPtr g = CarnotGroup::make(algebra_from_json(j.at("algebra")));
    GroupElement start = g->identity();
    if (j.contains("start")) {
      const std::vector<double> s = j.at("start").get<std::vector<double>>();
      require(s.size() == g->dim(), ErrorKind::DimensionMismatch, "curve: start has wrong size");
      start = g->exp(AlgebraVector(s));
    }
    std::vector<Piece> pieces;
    for (const json& p : j.at("pieces"))
      pieces.push_back({p.at("dt").get<double>(), p.at("h").get<std::vector<double>>()});
    return HorizontalPath(std::move(g), std::move(start), std::move(pieces), j.value("a", 0.0));
  });
}

json curve_to_json(const HorizontalPath& p) {
  const StratifiedAlgebra& alg = p.group()->algebra();
  json algebra;
  try {
    if (same_table(builtin(alg.name()), alg)) algebra = alg.name();
  } catch (const Error&) {
  }
  if (algebra.is_null()) algebra = algebra_to_json(alg);
  json pieces = json::array();
  for (const Piece& q : p.pieces()) pieces.push_back({{"dt", q.dt}, {"h", q.h}});
  return {{"algebra", algebra}, {"start", p.start().log.coords()}, {"a", p.a()}, {"pieces", pieces}};
}

json vector_to_json(const AlgebraVector& v) { return json(v.coords()); }

json matrix_to_json(const linalg::Matrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(row);
  }
  return out;
}

json validation_to_json(const ValidationReport& r) {
  return {{"ok", r.ok},
          {"antisymmetry", r.antisymmetry},
          {"grading", r.grading},
          {"jacobi", r.jacobi},
          {"generation", r.generation},
          {"generation_ranks", r.generation_ranks},
          {"message", r.message}};
}

json excess_to_json(const ExcessReport& r) {
  return {{"window", window_json(r.window)},
          {"gram", matrix_to_json(r.gram)},
          {"value", r.value},
          {"minimizer", vec(r.minimizer)}};
}

json selection_to_json(const IntervalSelection& s) {
  json iv = json::array();
  for (const auto& [a, b] : s.intervals) iv.push_back({a, b});
  return {{"intervals", iv},
          {"increments", s.increments},
          {"det", s.det},
          {"c_meas", s.c_meas},
          {"lower_bound_ok", s.lower_bound_ok},
          {"grid_depth", s.grid_depth}};
}

json ledger_to_json(const SurgeryLedger& l) {
  json stages = json::array();
  for (const StageRecord& st : l.stages) {
    json iv = json::array();
    for (const auto& [a, b] : st.intervals) iv.push_back({a, b});
    json ys = json::array(), zs = json::array();
    for (const AlgebraVector& y : st.y) ys.push_back(vector_to_json(y));
    for (const AlgebraVector& z : st.z) zs.push_back(vector_to_json(z));
    stages.push_back({{"k", st.k},
                      {"defect", vector_to_json(st.defect.e)},
                      {"defect_layer_norms", st.defect.layer_norms},
                      {"defect_lower_residual", st.defect.lower_residual},
                      {"defect_scale", st.defect.scale},
                      {"intervals", iv},
                      {"det", st.det},
                      {"c_meas", st.c_meas},
                      {"grid_depth", st.grid_depth},
                      {"Y", ys},
                      {"Z", zs},
                      {"c_max", st.c_max},
                      {"cost", st.cost},
                      {"cost_scale", st.cost_scale},
                      {"running_length", st.running_length},
                      {"start_fixed", st.start_fixed},
                      {"next_lower_residual", st.next_lower_residual},
                      {"tail_projection_error", st.tail_projection_error},
                      {"projection_deviation", st.projection_deviation}});
  }
  const ShortenParams& p = l.params;
  return {{"status", to_string(l.status)},
          {"message", l.message},
          {"params",
           {{"epsilon", p.epsilon},
            {"eta", p.eta},
            {"beta", p.beta},
            {"rho", p.rho},
            {"grid_depth", p.grid_depth},
            {"unit", p.unit},
            {"symmetric", p.symmetric}}},
          {"initial_excess", l.initial_excess},
          {"original_length", l.original_length},
          {"cut_length", l.cut_length},
          {"gross_gain", l.gross_gain},
          {"total_cost", l.total_cost},
          {"net_gain", l.net_gain},
          {"cut_tail_error", l.cut_tail_error},
          {"stages", stages},
          {"endpoint_residual_by_layer", l.endpoint_residual_by_layer},
          {"endpoint_residual", l.endpoint_residual}};
}

json profile_to_json(const BlowupProfile& p) {
  json rows = json::array();
  for (const ScaleRow& r : p.rows)
    rows.push_back({{"scale", r.scale},
                    {"window", window_json(r.window)},
                    {"clipped", r.clipped},
                    {"excess", r.excess},
                    {"direction", r.direction},
                    {"mean_direction", r.mean_direction},
                    {"residual", r.residual},
                    {"diagnostic", r.diagnostic}});
  return {{"anchor", p.anchor},
          {"one_sided", p.one_sided},
          {"window_n", p.window_n},
          {"tolerance", p.tolerance},
          {"rows", rows},
          {"warnings", p.warnings},
          {"tangent_line", p.tangent_line},
          {"tangent_direction", p.tangent_direction},
          {"excess_decreasing", p.excess_decreasing},
          {"residual_decreasing", p.residual_decreasing}};
}

json suite_to_json(const std::vector<SuiteResult>& results) {
  json out = json::array();
  for (const SuiteResult& r : results)
    out.push_back({{"group", r.group},
                   {"identity", r.identity},
                   {"cases", r.cases},
                   {"max_residual", r.max_residual},
                   {"tolerance", r.tolerance},
                   {"pass", r.pass()}});
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json parse(const std::string& text) {
  return guarded("json", [&] { return json::parse(text); });
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::InvalidArgument, "cannot write " + path);
  out << text;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "eta,gross,cost,net,endpoint_residual\n";
  for (const SweepRow& r : rows)
    out += num(r.eta) + "," + num(r.gross) + "," + num(r.cost) + "," + num(r.net) + "," +
           num(r.endpoint_residual) + "\n";
  return out;
}

std::string profile_csv(const BlowupProfile& p) {
  const std::size_t r = p.rows.empty() ? 0 : p.rows.front().direction.size();
  std::string out = "scale,excess";
  for (std::size_t i = 0; i < r; ++i) out += ",v" + std::to_string(i + 1);
  out += ",residual,diagnostic\n";
  for (const ScaleRow& row : p.rows) {
    out += num(row.scale) + "," + num(row.excess);
    for (std::size_t i = 0; i < r; ++i)
      out += "," + (row.mean_direction.empty() ? std::string("nan") : num(row.mean_direction[i]));
    out += "," + num(row.residual) + "," + num(row.diagnostic) + "\n";
  }
  return out;
}

std::string excess_sweep_csv(const std::vector<double>& scales,
                             const std::vector<ExcessReport>& reports) {
  const std::size_t r = reports.empty() ? 0 : reports.front().minimizer.size();
  std::string out = "scale,excess";
  for (std::size_t i = 0; i < r; ++i) out += ",v" + std::to_string(i + 1);
  out += "\n";
  for (std::size_t k = 0; k < reports.size(); ++k) {
    out += num(scales[k]) + "," + num(reports[k].value);
    for (double x : reports[k].minimizer) out += "," + num(x);
    out += "\n";
  }
  return out;
}

}  // namespace carnot::io

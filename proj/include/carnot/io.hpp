#pragma once

// JSON and CSV formats. Algebra tables use 0-based basis indices.

#include <json.hpp>
#include <string>
#include <vector>

#include "carnot/blowup.hpp"
#include "carnot/excess.hpp"
#include "carnot/identity_suite.hpp"
#include "carnot/shorten.hpp"

namespace carnot::io {

using nlohmann::json;

// A name accepted by builtin(), or {"name"?, "layer_dims":[...],
// "brackets":[{"i":int,"j":int,"coeffs":{"k":real}}]} with i < j.
StratifiedAlgebra algebra_from_json(const json& j);
json algebra_to_json(const StratifiedAlgebra& alg);

// {"algebra": ..., "start": [...], "a": real, "pieces": [{"dt": real, "h": [...]}]}.
// The algebra is written as its name when builtin(name) rebuilds it, else inline.
HorizontalPath curve_from_json(const json& j);
json curve_to_json(const HorizontalPath& p);

json vector_to_json(const AlgebraVector& v);
json matrix_to_json(const linalg::Matrix& m);
json validation_to_json(const ValidationReport& r);
json excess_to_json(const ExcessReport& r);
json selection_to_json(const IntervalSelection& s);
json ledger_to_json(const SurgeryLedger& l);
json profile_to_json(const BlowupProfile& p);
json suite_to_json(const std::vector<SuiteResult>& results);

// Canonical text: two-space indentation and a trailing newline.
std::string dump(const json& j);
json parse(const std::string& text);
json read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// CSV with a header row; numbers with 17 significant digits.
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string profile_csv(const BlowupProfile& p);
std::string excess_sweep_csv(const std::vector<double>& scales,
                             const std::vector<ExcessReport>& reports);

}  // namespace carnot::io

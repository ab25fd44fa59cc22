#pragma once

#include <string>
#include <vector>

#include "carnot/excess.hpp"
#include "carnot/linalg.hpp"
#include "carnot/surgery.hpp"

namespace carnot {

struct ShortenParams {
  double epsilon = 0.0;      // required excess lower bound on the cut window
  double eta = 0.1;          // cut scale
  double beta = 0.05;        // margin exponent
  std::vector<double> rho;   // rho_1 = 1 > rho_2 > ... > rho_s > 0
  int grid_depth = 6;        // interval search depth
  double unit = 1.0;         // window I_k has half-width unit * (eta / unit)^rho_k
  bool symmetric = false;

  double window(int k) const;  // 1-based k
};

// Strict check of ((k+1) rho_k - rho_{k+1}) / k > 1 + beta for k = 1..s-1,
// with rho_1 = 1 and strictly decreasing positive rho.
bool params_valid(const std::vector<double>& rho, double beta);

// Back-solves rho_k = (rho_{k+1} + k)/(k+1) + k beta/(k+1) + slack from
// k = s-1 down to 1 with one uniform slack chosen so that rho_1 = 1. Throws
// Infeasible when that slack is not positive.
ShortenParams choose_params(int s, double beta, double rho_s);

struct BracketDecomposition {
  std::vector<AlgebraVector> y;  // Y_1..Y_r in g_k
  double residual = 0.0;         // max |sum [Y_i, X_i] - E|
  double ratio = 0.0;            // max |Y_i| / |E| (0 for E = 0)
};
// Min-norm Y_i in g_k with sum_i [Y_i, X_i] = e for e in g_{k+1}.
BracketDecomposition bracket_decompose(const StratifiedAlgebra& alg, const AlgebraVector& e, int k);

// c with X_i = sum_j c_ij Delta_j, i.e. c = D^{-T} for D with columns Delta_j.
// Throws Singular.
linalg::Matrix coefficients_solve(const std::vector<std::vector<double>>& increments);

struct Defect {
  AlgebraVector e;                 // log(gamma(T)^{-1} gamma^(k)(T_k))
  std::vector<double> layer_norms;  // |pi-bar_j(e)| for j = 1..s
  double lower_residual = 0.0;     // max coordinate of e in layers <= k
  double scale = 0.0;              // eta^{(k+1) rho_k} (unit-scaled)
};
// Throws Internal when layers <= k of the defect exceed 1e-8.
Defect defect(const HorizontalPath& original, const HorizontalPath& current, int k,
              const ShortenParams& params);

struct StageRecord {
  int k = 0;
  Defect defect;
  std::vector<std::pair<double, double>> intervals;
  double det = 0.0;
  double c_meas = 0.0;
  int grid_depth = 0;
  std::vector<AlgebraVector> y;
  std::vector<AlgebraVector> z;
  double c_max = 0.0;
  double cost = 0.0;            // T_{k+1} - T_k
  double cost_scale = 0.0;      // eta^{((k+1) rho_k - rho_{k+1}) / k}
  double running_length = 0.0;  // T_{k+1}
  // Stage invariants of the resulting curve gamma^(k+1).
  bool start_fixed = false;           // (i)
  double next_lower_residual = 0.0;   // (ii): layers <= k+1 of the new defect
  double tail_projection_error = 0.0;  // (vi)
  double projection_deviation = 0.0;   // (vii)
};

enum class ShortenStatus { Shortened, NoNetGain };
const char* to_string(ShortenStatus s);

struct SurgeryLedger {
  ShortenStatus status = ShortenStatus::NoNetGain;
  std::string message;
  ShortenParams params;
  double initial_excess = 0.0;
  double original_length = 0.0;
  double cut_length = 0.0;          // T_1
  double gross_gain = 0.0;          // T - T_1
  double total_cost = 0.0;          // sum_k (T_{k+1} - T_k)
  double net_gain = 0.0;            // gross_gain - total_cost
  double cut_tail_error = 0.0;      // (vi) for gamma^(1)
  std::vector<StageRecord> stages;
  std::vector<double> endpoint_residual_by_layer;
  double endpoint_residual = 0.0;   // max |coordinate| of the final defect
};

struct ShortenResult {
  HorizontalPath path;
  SurgeryLedger ledger;
};

ShortenResult shorten_one_sided(const HorizontalPath& p, const ShortenParams& params);
ShortenResult shorten_symmetric(const HorizontalPath& p, const ShortenParams& params);
inline ShortenResult shorten(const HorizontalPath& p, const ShortenParams& params) {
  return params.symmetric ? shorten_symmetric(p, params) : shorten_one_sided(p, params);
}

struct SweepRow {
  double eta;
  double gross;
  double cost;
  double net;
  double endpoint_residual;
};
// Runs the pipeline at each eta (in parallel, results in input order).
std::vector<SweepRow> shorten_sweep(const HorizontalPath& p, const ShortenParams& params,
                                    const std::vector<double>& etas);

// Least-squares slope of log y against log x over the positive pairs.
double fit_exponent(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace carnot

#pragma once

#include <string>
#include <vector>

#include "carnot/excess.hpp"

namespace carnot {

// gamma_l(tau) = delta_{1/l}(gamma(t)^{-1} gamma(t + l tau)): recentered at
// gamma(t) = 0, durations divided by l, controls unchanged.
HorizontalPath dilate_reparam(const HorizontalPath& p, double lambda, double anchor);

struct ScaleRow {
  double scale;
  Window window;               // window actually used (clipped to the domain)
  bool clipped = false;
  double excess = 0.0;
  std::vector<double> direction;  // excess minimizer
  std::vector<double> mean_direction;  // v_l, normalized mean control (empty if mean is 0)
  double residual = 0.0;       // (avg |h - v_l|^2)^{1/2}
  double diagnostic = 0.0;     // excess / sqrt(scale / scales[0])
};

struct BlowupProfile {
  double anchor = 0.0;
  bool one_sided = false;
  double window_n = 1.0;
  std::vector<ScaleRow> rows;
  std::vector<std::string> warnings;
  double tolerance = 1e-2;
  bool tangent_line = false;          // residual < tolerance at the smallest scale
  std::vector<double> tangent_direction;
  bool excess_decreasing = false;     // reported trend, never asserted by the library
  bool residual_decreasing = false;
};

// Per scale l: the window [t - lN, t + lN] (one-sided: [t, t + lN]) clipped
// to the domain, the excess there, and the control residual against the
// normalized mean control. Scales are positive and decreasing.
BlowupProfile excess_profile(const HorizontalPath& p, double anchor,
                             const std::vector<double>& scales, bool one_sided = false,
                             double window_n = 1.0, double tolerance = 1e-2);

struct TangentEstimate {
  std::vector<double> direction;   // v at the smallest scale
  std::vector<double> residuals;   // r_l per scale
  bool detected = false;
  std::vector<bool> detected_per_scale;
};
TangentEstimate tangent_line_estimate(const HorizontalPath& p, double anchor,
                                      const std::vector<double>& scales, double window_n = 1.0,
                                      double tolerance = 1e-2, bool one_sided = false);

}  // namespace carnot

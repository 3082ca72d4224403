#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "imlab/errors.hpp"
#include "imlab/harness/experiments.hpp"
#include "imlab/imethod_diag.hpp"

namespace imlab::harness::detail {

using I64 = std::int64_t;

inline double median(std::vector<double> xs) {
  if (xs.empty()) return std::nan("");
  std::sort(xs.begin(), xs.end());
  const std::size_t m = xs.size() / 2;
  return xs.size() % 2 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

inline double max_of(const std::vector<double>& xs) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : xs) m = std::max(m, x);
  return m;
}

inline std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

inline const char* role_of(const ExperimentConfig& cfg, std::size_t seed_index) {
  return seed_index < cfg.calibration_count() ? "calibration" : "heldout";
}

/// Runs fn, re-throwing solver blow-up with the seed and cell attached.
template <class F>
auto with_context(const std::string& experiment, std::uint64_t seed, const std::string& cell, F&& fn) {
  try {
    return fn();
  } catch (const BlowUpError& e) {
    throw BlowUpError(experiment + " seed " + std::to_string(seed) + (cell.empty() ? "" : " " + cell) + ": " +
                          e.what(),
                      e.time());
  }
}

/// Calibrated-constant check of the "≲" protocol: the constant is the largest
/// value over the calibration seeds; held-out values must stay within headroom.
struct Calibration {
  double constant = 0.0;
  double heldout_max = 0.0;
  bool passed = false;
};

inline Calibration calibrate(const std::vector<double>& calibration, const std::vector<double>& heldout,
                             double headroom) {
  Calibration c;
  c.constant = max_of(calibration);
  c.heldout_max = heldout.empty() ? -std::numeric_limits<double>::infinity() : max_of(heldout);
  // A non-positive held-out maximum means the inequality holds with any constant.
  c.passed = c.heldout_max <= 0.0 || c.heldout_max <= headroom * c.constant;
  return c;
}

/// Slope of log(y) against log(x) over entries with y > 0; NaN with fewer than 3 such points.
inline double trend_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (ys[i] > 0.0 && std::isfinite(ys[i])) {
      x.push_back(xs[i]);
      y.push_back(ys[i]);
    }
  if (x.size() < 3) return std::nan("");
  return diag::fit_loglog_slope(x, y).slope;
}

}  // namespace imlab::harness::detail

#pragma once

#include <span>

#include "streambench/harness.hpp"

namespace streambench::model {

/// T(B) = T0 + B / Wmax fitted to per-invocation times.
struct ModelFit {
  double T0 = 0.0;    // seconds
  double Wmax = 0.0;  // bytes per second
  double r2 = 0.0;    // of the time-domain regression
  std::size_t n_points = 0;
  /// The regression intercept came out negative and T0 was clamped to 0.
  bool clamped_T0 = false;
};

struct FitOptions {
  /// Samples with fewer bytes are ignored.
  double min_bytes = 0.0;
  /// Weight each point by 1/t^2 (relative-error fit) instead of plain OLS.
  bool weighted = false;
};

/// Least-squares fit of t = a + b B; T0 = a (clamped at 0), Wmax = 1/b.
/// Throws std::invalid_argument with fewer than two distinct byte counts and
/// std::domain_error when the slope is not positive.
ModelFit fit_time_model(std::span<const double> bytes, std::span<const double> seconds, const FitOptions& opts = {});

/// fit_time_model over samples, using elapsed / trials as the time per invocation.
ModelFit fit_model(std::span<const harness::BandwidthSample> samples, const FitOptions& opts = {});

/// Effective bandwidth B / T(B) in bytes per second. B = 0 gives 0 when
/// T0 > 0 and Wmax when T0 = 0 (the limit).
double w_eff(const ModelFit& fit, double bytes);

/// Bytes needed to reach fraction f of Wmax: f/(1-f) T0 Wmax. f must lie in (0, 1).
double efficiency_point(const ModelFit& fit, double f);

}  // namespace streambench::model

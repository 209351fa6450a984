#include "streambench/model.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace streambench::model {

ModelFit fit_time_model(std::span<const double> bytes, std::span<const double> seconds, const FitOptions& opts) {
  if (bytes.size() != seconds.size()) throw std::invalid_argument("fit: bytes and times differ in length");

  std::vector<double> xs, ys, ws;
  std::set<double> distinct;
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    if (bytes[i] < opts.min_bytes) continue;
    if (!std::isfinite(bytes[i]) || !std::isfinite(seconds[i]) || !(seconds[i] > 0.0))
      throw std::invalid_argument("fit: non-finite or non-positive sample at index " + std::to_string(i));
    xs.push_back(bytes[i]);
    ys.push_back(seconds[i]);
    ws.push_back(opts.weighted ? 1.0 / (seconds[i] * seconds[i]) : 1.0);
    distinct.insert(bytes[i]);
  }
  if (distinct.size() < 2)
    throw std::invalid_argument("fit: need at least 2 distinct sizes, have " + std::to_string(distinct.size()));

  // Weighted means, then centered sums to keep the normal equations well conditioned.
  double wsum = 0.0, xbar = 0.0, ybar = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    wsum += ws[i];
    xbar += ws[i] * xs[i];
    ybar += ws[i] * ys[i];
  }
  xbar /= wsum;
  ybar /= wsum;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - xbar;
    const double dy = ys[i] - ybar;
    sxx += ws[i] * dx * dx;
    sxy += ws[i] * dx * dy;
    syy += ws[i] * dy * dy;
  }
  const double slope = sxy / sxx;
  const double intercept = ybar - slope * xbar;
  if (!(slope > 0.0))
    throw std::domain_error("fit: non-positive slope " + std::to_string(slope) +
                            " (time does not grow with bytes moved)");

  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (intercept + slope * xs[i]);
    ss_res += ws[i] * e * e;
  }

  ModelFit fit;
  fit.Wmax = 1.0 / slope;
  fit.T0 = intercept;
  if (fit.T0 < 0.0) {
    fit.T0 = 0.0;
    fit.clamped_T0 = true;
  }
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  fit.n_points = xs.size();
  return fit;
}

ModelFit fit_model(std::span<const harness::BandwidthSample> samples, const FitOptions& opts) {
  std::vector<double> bytes, seconds;
  bytes.reserve(samples.size());
  seconds.reserve(samples.size());
  for (const auto& s : samples) {
    bytes.push_back(static_cast<double>(s.bytes));
    seconds.push_back(s.seconds_per_trial());
  }
  return fit_time_model(bytes, seconds, opts);
}

double w_eff(const ModelFit& fit, double bytes) {
  if (!(bytes >= 0.0)) throw std::invalid_argument("w_eff: bytes must be >= 0");
  if (bytes == 0.0) return fit.T0 > 0.0 ? 0.0 : fit.Wmax;
  return bytes / (fit.T0 + bytes / fit.Wmax);
}

double efficiency_point(const ModelFit& fit, double f) {
  if (!(f > 0.0 && f < 1.0)) throw std::invalid_argument("efficiency_point: fraction must lie in (0, 1)");
  return f / (1.0 - f) * fit.T0 * fit.Wmax;
}

}  // namespace streambench::model

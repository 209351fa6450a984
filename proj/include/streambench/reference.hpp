#pragma once

#include <span>

#include "streambench/core.hpp"
#include "streambench/mesh.hpp"

/// Sequential single-threaded references used to validate benchmark runs and
/// by the selftest. Reductions use Neumaier-compensated summation.
namespace streambench::reference {

/// Neumaier (improved Kahan) accumulator.
class CompensatedSum {
 public:
  void add(double v);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

void copy(std::span<const double> x, std::span<double> y);
void axpy(double alpha, std::span<const double> x, double beta, std::span<double> y);
double norm2(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
/// Unfused x += alpha p; r -= alpha Ap; returns compensated r.r.
double cg_update(double alpha, std::span<const double> p, std::span<const double> Ap, std::span<double> x,
                 std::span<double> r);

/// Row-by-row CSR gather summing in ascending column order.
void gather(const mesh::GatherOp& op, std::span<const double> qL, std::span<double> qG);
/// Scatter straight from the definition ids[n] >= 0 -> qL[n] = qG[ids[n]].
void scatter(std::span<const Index> ids, std::span<const double> qG, std::span<double> qL);

/// |a - b| <= rel * max(|b|, scale).
bool close_rel(double a, double b, double rel, double scale = 0.0);

}  // namespace streambench::reference

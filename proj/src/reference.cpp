#include "streambench/reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace streambench::reference {

void CompensatedSum::add(double v) {
  const double t = sum_ + v;
  if (std::abs(sum_) >= std::abs(v))
    comp_ += (sum_ - t) + v;
  else
    comp_ += (v - t) + sum_;
  sum_ = t;
}

namespace {
void check(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("reference::") + what + ": length mismatch");
}
}  // namespace

void copy(std::span<const double> x, std::span<double> y) {
  check(x.size() == y.size(), "copy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i];
}

void axpy(double alpha, std::span<const double> x, double beta, std::span<double> y) {
  check(x.size() == y.size(), "axpy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = alpha * x[i] + beta * y[i];
}

double norm2(std::span<const double> x) {
  CompensatedSum s;
  for (double v : x) s.add(v * v);
  return s.value();
}

double dot(std::span<const double> x, std::span<const double> y) {
  check(x.size() == y.size(), "dot");
  CompensatedSum s;
  for (std::size_t i = 0; i < x.size(); ++i) s.add(x[i] * y[i]);
  return s.value();
}

double cg_update(double alpha, std::span<const double> p, std::span<const double> Ap, std::span<double> x,
                 std::span<double> r) {
  axpy(alpha, p, 1.0, x);
  axpy(-alpha, Ap, 1.0, r);
  return norm2(r);
}

void gather(const mesh::GatherOp& op, std::span<const double> qL, std::span<double> qG) {
  check(static_cast<Index>(qL.size()) == op.nl && static_cast<Index>(qG.size()) == op.ng, "gather");
  for (Index row = 0; row < op.ng; ++row) {
    double sum = 0.0;
    for (Index c = op.row_starts[row]; c < op.row_starts[row + 1]; ++c) sum += qL[op.col_ids[c]];
    qG[row] = sum;
  }
}

void scatter(std::span<const Index> ids, std::span<const double> qG, std::span<double> qL) {
  check(ids.size() == qL.size(), "scatter");
  for (std::size_t n = 0; n < ids.size(); ++n)
    if (ids[n] >= 0) qL[n] = qG[static_cast<std::size_t>(ids[n])];
}

bool close_rel(double a, double b, double rel, double scale) {
  return std::abs(a - b) <= rel * std::max(std::abs(b), scale);
}

}  // namespace streambench::reference

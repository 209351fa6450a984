#pragma once

#include <functional>
#include <span>
#include <stdexcept>

#include "streambench/core.hpp"
#include "streambench/kernels.hpp"

namespace streambench::cg {

/// y = A x. Must be symmetric positive definite on the Krylov space explored.
using LinearOperator = std::function<void(std::span<const double> x, std::span<double> y)>;

struct CGOptions {
  /// Stop once r.r <= eps (squared residual, not normalized).
  double eps = 1e-20;
  int max_iterations = 1000;
  /// When > 0 also stop once r.r <= rel_eps * b.b.
  double rel_eps = 0.0;
  kernels::ReductionConfig reduction{};
  /// Use the fused BS5 update; false runs the unfused BS2, BS2, BS3 sequence.
  bool fused = true;
};

struct CGResult {
  DVector x;
  int iterations = 0;
  double final_rr = 0.0;
  bool converged = false;
};

/// Raised when p.Ap <= 0, i.e. the operator is not positive definite.
class NotPositiveDefinite : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Plain (unpreconditioned) conjugate gradients built from the BS kernels.
CGResult cg_solve(const LinearOperator& apply_A, std::span<const double> b, std::span<const double> x0,
                  const CGOptions& options = {});

/// y = diag(d) x.
class DiagonalOperator {
 public:
  explicit DiagonalOperator(DVector diagonal) : diag_(std::move(diagonal)) {}
  void operator()(std::span<const double> x, std::span<double> y) const;
  std::size_t size() const { return diag_.size(); }

 private:
  DVector diag_;
};

/// Dense row-major n x n operator.
class DenseOperator {
 public:
  DenseOperator(std::size_t n, DVector row_major);
  void operator()(std::span<const double> x, std::span<double> y) const;
  std::size_t size() const { return n_; }
  double at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  /// M^T M + n I for M with entries uniform in [-1, 1] drawn from `seed`.
  static DenseOperator random_spd(std::size_t n, std::uint64_t seed);

 private:
  std::size_t n_;
  DVector a_;
};

}  // namespace streambench::cg

#include "streambench/cg.hpp"

#include <cmath>
#include <random>
#include <string>

namespace streambench::cg {

using namespace streambench::kernels;

CGResult cg_solve(const LinearOperator& apply_A, std::span<const double> b, std::span<const double> x0,
                  const CGOptions& options) {
  if (b.size() != x0.size())
    throw std::invalid_argument("cg_solve: b and x0 lengths differ (" + std::to_string(b.size()) + " vs " +
                                std::to_string(x0.size()) + ")");
  if (!(options.eps > 0.0)) throw std::invalid_argument("cg_solve: eps must be > 0");
  if (options.max_iterations < 0) throw std::invalid_argument("cg_solve: max_iterations must be >= 0");
  const ReductionConfig& cfg = options.reduction;
  cfg.validate();

  const std::size_t n = b.size();
  CGResult res;
  res.x.assign(x0.begin(), x0.end());
  DVector r(n), p(n), Ap(n);

  // r = b - A x0
  apply_A(res.x, Ap);
  bs1_copy(b, r);
  bs2_axpy(-1.0, Ap, 1.0, r);
  bs1_copy(r, p);

  double tol = options.eps;
  if (options.rel_eps > 0.0) tol = std::max(tol, options.rel_eps * bs3_norm2(b, cfg));

  double rr = bs3_norm2(r, cfg);
  while (rr > tol && res.iterations < options.max_iterations) {
    apply_A(p, Ap);
    const double pAp = bs4_dot(p, Ap, cfg);
    if (!(pAp > 0.0))
      throw NotPositiveDefinite("cg_solve: p.Ap = " + std::to_string(pAp) + " at iteration " +
                                std::to_string(res.iterations));
    const double alpha = rr / pAp;

    double rr_next;
    if (options.fused) {
      rr_next = bs5_fused_cg_update(alpha, p, Ap, res.x, r, cfg);
    } else {
      bs2_axpy(alpha, p, 1.0, res.x);
      bs2_axpy(-alpha, Ap, 1.0, r);
      rr_next = bs3_norm2(r, cfg);
    }
    const double beta = rr_next / rr;
    bs2_axpy(1.0, r, beta, p);
    rr = rr_next;
    ++res.iterations;
  }
  res.final_rr = rr;
  res.converged = rr <= tol;
  return res;
}

void DiagonalOperator::operator()(std::span<const double> x, std::span<double> y) const {
  if (x.size() != diag_.size() || y.size() != diag_.size())
    throw std::invalid_argument("DiagonalOperator: length mismatch");
  for (std::size_t i = 0; i < diag_.size(); ++i) y[i] = diag_[i] * x[i];
}

DenseOperator::DenseOperator(std::size_t n, DVector row_major) : n_(n), a_(std::move(row_major)) {
  if (a_.size() != n * n) throw std::invalid_argument("DenseOperator: expected n*n entries");
}

void DenseOperator::operator()(std::span<const double> x, std::span<double> y) const {
  if (x.size() != n_ || y.size() != n_) throw std::invalid_argument("DenseOperator: length mismatch");
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += a_[i * n_ + j] * x[j];
    y[i] = s;
  }
}

DenseOperator DenseOperator::random_spd(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  DVector m(n * n);
  for (double& v : m) v = dist(rng);
  DVector a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += m[k * n + i] * m[k * n + j];
      a[i * n + j] = s + (i == j ? static_cast<double>(n) : 0.0);
    }
  return DenseOperator(n, std::move(a));
}

}  // namespace streambench::cg

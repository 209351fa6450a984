#pragma once

#include <span>

#include "streambench/core.hpp"

namespace streambench::kernels {

/// Shape of the two-stage reduction used by BS3-BS5.
///
/// Stage one: block b owns block_size slots; slot t accumulates entries
/// t + b*block_size + m*block_size*n_blocks (m = 0, 1, ...) in increasing
/// order, then the slots are folded by a power-of-two tree into partial[b].
/// Stage two: a single block of block_size slots reduces the n_blocks
/// partials the same way. The summation order depends only on this config,
/// never on the worker count, so results are reproducible bit for bit.
struct ReductionConfig {
  int block_size = 256;
  int n_blocks = 512;

  /// Throws std::invalid_argument unless block_size is a power of two >= 2 and n_blocks >= 1.
  void validate() const;
};

void bs1_copy(std::span<const double> x, std::span<double> y);

/// y = alpha*x + beta*y.
void bs2_axpy(double alpha, std::span<const double> x, double beta, std::span<double> y);

/// Squared 2-norm, no square root.
double bs3_norm2(std::span<const double> x, const ReductionConfig& cfg = {});

double bs4_dot(std::span<const double> x, std::span<const double> y, const ReductionConfig& cfg = {});

/// Single pass of x += alpha*p, r -= alpha*Ap; returns r.r of the updated r.
///
/// Vector results are bitwise identical to bs2_axpy(alpha, p, 1, x) followed by
/// bs2_axpy(-alpha, Ap, 1, r), and the scalar to bs3_norm2(r) with the same cfg.
double bs5_fused_cg_update(double alpha, std::span<const double> p, std::span<const double> Ap,
                           std::span<double> x, std::span<double> r, const ReductionConfig& cfg = {});

}  // namespace streambench::kernels

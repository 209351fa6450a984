#include "streambench/kernels.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "streambench/parallel.hpp"

namespace streambench::kernels {

void ReductionConfig::validate() const {
  if (block_size < 2 || (block_size & (block_size - 1)) != 0)
    throw std::invalid_argument("reduction block_size must be a power of two >= 2, got " +
                                std::to_string(block_size));
  if (n_blocks < 1)
    throw std::invalid_argument("reduction n_blocks must be >= 1, got " + std::to_string(n_blocks));
}

namespace {

void check_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b)
    throw std::invalid_argument(std::string(what) + ": length mismatch (" + std::to_string(a) + " vs " +
                                std::to_string(b) + ")");
}

// One work-group of the reduction: slot t accumulates term(id) for
// id = t + first, t + first + stride, ... then the slots fold pairwise.
template <class Term>
double reduce_block(std::int64_t n, std::int64_t first, std::int64_t stride, std::span<double> slots,
                    Term& term) {
  const std::int64_t bs = static_cast<std::int64_t>(slots.size());
  std::fill(slots.begin(), slots.end(), 0.0);
  for (std::int64_t base = first; base < n; base += stride) {
    const std::int64_t len = std::min(bs, n - base);
    for (std::int64_t t = 0; t < len; ++t) slots[t] += term(base + t);
  }
  for (std::int64_t k = bs / 2; k > 1; k >>= 1)
    for (std::int64_t t = 0; t < k; ++t) slots[t] += slots[t + k];
  return slots[0] + slots[1];
}

template <class Term>
double two_stage_reduce(std::int64_t n, const ReductionConfig& cfg, Term&& term) {
  cfg.validate();
  const std::int64_t bs = cfg.block_size;
  const std::int64_t nb = cfg.n_blocks;
  std::vector<double> partial(static_cast<std::size_t>(nb));

  parallel_chunks(nb, [&](std::int64_t lo, std::int64_t hi) {
    std::vector<double> slots(static_cast<std::size_t>(bs));
    for (std::int64_t b = lo; b < hi; ++b)
      partial[b] = b * bs < n ? reduce_block(n, b * bs, bs * nb, slots, term) : 0.0;  // empty block folds to +0
  });

  std::vector<double> slots(static_cast<std::size_t>(bs));
  auto read_partial = [&](std::int64_t i) { return partial[i]; };
  return reduce_block(nb, 0, bs, slots, read_partial);
}

}  // namespace

void bs1_copy(std::span<const double> x, std::span<double> y) {
  check_same_length(x.size(), y.size(), "bs1_copy");
  parallel_chunks(static_cast<std::int64_t>(x.size()), [&](std::int64_t lo, std::int64_t hi) {
    std::copy(x.begin() + lo, x.begin() + hi, y.begin() + lo);
  });
}

void bs2_axpy(double alpha, std::span<const double> x, double beta, std::span<double> y) {
  check_same_length(x.size(), y.size(), "bs2_axpy");
  parallel_chunks(static_cast<std::int64_t>(x.size()), [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t i = lo; i < hi; ++i) y[i] = alpha * x[i] + beta * y[i];
  });
}

double bs3_norm2(std::span<const double> x, const ReductionConfig& cfg) {
  return two_stage_reduce(static_cast<std::int64_t>(x.size()), cfg, [x](std::int64_t i) { return x[i] * x[i]; });
}

double bs4_dot(std::span<const double> x, std::span<const double> y, const ReductionConfig& cfg) {
  check_same_length(x.size(), y.size(), "bs4_dot");
  return two_stage_reduce(static_cast<std::int64_t>(x.size()), cfg,
                          [x, y](std::int64_t i) { return x[i] * y[i]; });
}

double bs5_fused_cg_update(double alpha, std::span<const double> p, std::span<const double> Ap,
                           std::span<double> x, std::span<double> r, const ReductionConfig& cfg) {
  check_same_length(p.size(), Ap.size(), "bs5_fused_cg_update");
  check_same_length(p.size(), x.size(), "bs5_fused_cg_update");
  check_same_length(p.size(), r.size(), "bs5_fused_cg_update");
  // Each index is visited exactly once by exactly one block.
  return two_stage_reduce(static_cast<std::int64_t>(p.size()), cfg, [=](std::int64_t i) {
    x[i] = alpha * p[i] + x[i];
    const double rn = r[i] - alpha * Ap[i];
    r[i] = rn;
    return rn * rn;
  });
}

}  // namespace streambench::kernels

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "streambench/cg.hpp"

using namespace streambench;
using namespace streambench::cg;

namespace {

// ||b - A x||^2 with A x accumulated in long double.
double true_residual2(const DenseOperator& A, const std::vector<double>& b, const std::vector<double>& x) {
  std::vector<double> terms;
  for (std::size_t i = 0; i < b.size(); ++i) {
    long double ax = 0.0L;
    for (std::size_t j = 0; j < b.size(); ++j) ax += static_cast<long double>(A.at(i, j)) * x[j];
    const double r = static_cast<double>(b[i] - ax);
    terms.push_back(r * r);
  }
  return static_cast<double>(oracle::compensated_sum(terms));
}

// Gaussian elimination with partial pivoting in long double.
std::vector<double> direct_solve(const DenseOperator& A, const std::vector<double>& b) {
  const std::size_t n = b.size();
  std::vector<std::vector<long double>> m(n, std::vector<long double>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = A.at(i, j);
    m[i][n] = b[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
    std::swap(m[c], m[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const long double f = m[r][c] / m[c][c];
      for (std::size_t k = c; k <= n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    long double s = m[i][n];
    for (std::size_t k = i + 1; k < n; ++k) s -= m[i][k] * x[k];
    x[i] = static_cast<double>(s / m[i][i]);
  }
  return x;
}

}  // namespace

TEST_CASE("identity operator converges in one step") {
  const auto b = oracle::random_vector(33, 1);
  const auto res = cg_solve(DiagonalOperator(std::vector<double>(33, 1.0)), b, std::vector<double>(33, 0.0));
  CHECK(res.converged);
  CHECK(res.iterations == 1);
  CHECK(res.final_rr == 0.0);
  CHECK(oracle::bitwise_equal(res.x, b));
}

TEST_CASE("diag(1, 2)") {
  CGOptions opts;
  opts.eps = 1e-24;
  const auto res = cg_solve(DiagonalOperator({1.0, 2.0}), std::vector<double>{1, 1}, std::vector<double>{0, 0}, opts);
  CHECK(res.converged);
  CHECK(res.iterations <= 2);
  CHECK(std::abs(res.x[0] - 1.0) <= 1e-12);
  CHECK(std::abs(res.x[1] - 0.5) <= 1e-12);
}

TEST_CASE("k distinct eigenvalues need at most k iterations") {
  for (int k = 1; k <= 8; ++k) {
    std::vector<double> diag(64);
    for (std::size_t i = 0; i < diag.size(); ++i) diag[i] = 1.0 + 0.75 * static_cast<double>(i % k);
    const auto b = oracle::random_vector(64, 100 + k);
    const auto res = cg_solve(DiagonalOperator(diag), b, std::vector<double>(64, 0.0));
    INFO("k=" << k);
    CHECK(res.converged);
    CHECK(res.iterations <= k);
    for (std::size_t i = 0; i < 64; ++i) CHECK(std::abs(res.x[i] - b[i] / diag[i]) <= 1e-10);
  }
}

TEST_CASE("random dense SPD system") {
  const auto A = DenseOperator::random_spd(50, 7);
  const auto b = oracle::random_vector(50, 8);
  CGOptions opts;
  opts.max_iterations = 55;
  const auto res = cg_solve(A, b, std::vector<double>(50, 0.0), opts);
  CHECK(res.converged);
  CHECK(res.iterations <= 55);
  const double bb = oracle::dot(b, b);
  const double true_rr = true_residual2(A, b, res.x);
  CHECK(true_rr <= 1e-18 * bb);
  const auto direct = direct_solve(A, b);
  for (std::size_t i = 0; i < 50; ++i) CHECK(std::abs(res.x[i] - direct[i]) <= 1e-10);
}

TEST_CASE("reported r.r tracks the true residual") {
  const auto A = DenseOperator::random_spd(40, 17);
  const auto b = oracle::random_vector(40, 18);
  CGOptions opts;
  opts.eps = 1e-16;  // stop well above rounding level
  const auto res = cg_solve(A, b, std::vector<double>(40, 0.0), opts);
  REQUIRE(res.converged);
  CHECK(std::isfinite(res.final_rr));
  CHECK(oracle::rel_err(true_residual2(A, b, res.x), res.final_rr) <= 1e-6);
}

TEST_CASE("fused and unfused paths agree bitwise") {
  const auto A = DenseOperator::random_spd(50, 3);
  const auto b = oracle::random_vector(50, 4);
  const auto x0 = oracle::random_vector(50, 5);
  for (kernels::ReductionConfig cfg : {kernels::ReductionConfig{}, kernels::ReductionConfig{4, 3}}) {
    CGOptions opts;
    opts.reduction = cfg;
    const auto fused = cg_solve(A, b, x0, opts);
    opts.fused = false;
    const auto unfused = cg_solve(A, b, x0, opts);
    CHECK(fused.iterations == unfused.iterations);
    CHECK(oracle::bitwise_equal(fused.x, unfused.x));
    CHECK(fused.final_rr == unfused.final_rr);
  }
}

TEST_CASE("relative tolerance") {
  const auto A = DenseOperator::random_spd(30, 9);
  const auto b = oracle::random_vector(30, 10, 1e3, 2e3);
  CGOptions opts;
  opts.eps = 1e-300;
  opts.rel_eps = 1e-10;
  const auto res = cg_solve(A, b, std::vector<double>(30, 0.0), opts);
  CHECK(res.converged);
  CHECK(res.final_rr <= 1e-10 * oracle::dot(b, b));
}

TEST_CASE("iteration cap and errors") {
  const auto A = DenseOperator::random_spd(20, 11);
  const auto b = oracle::random_vector(20, 12);
  CGOptions opts;
  opts.max_iterations = 2;
  const auto res = cg_solve(A, b, std::vector<double>(20, 0.0), opts);
  CHECK_FALSE(res.converged);
  CHECK(res.iterations == 2);

  CHECK_THROWS_AS(cg_solve(DiagonalOperator({-1.0, -2.0}), std::vector<double>{1, 1}, std::vector<double>{0, 0}),
                  NotPositiveDefinite);
  CHECK_THROWS_AS(cg_solve(A, b, std::vector<double>(19, 0.0)), std::invalid_argument);
  opts.eps = 0.0;
  CHECK_THROWS_AS(cg_solve(A, b, std::vector<double>(20, 0.0), opts), std::invalid_argument);
}

#include "streambench/selftest.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "streambench/cg.hpp"
#include "streambench/gs.hpp"
#include "streambench/kernels.hpp"
#include "streambench/mesh.hpp"
#include "streambench/model.hpp"
#include "streambench/parallel.hpp"
#include "streambench/reference.hpp"

namespace streambench::selftest {

using namespace streambench::kernels;

namespace {

DVector random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  DVector v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

bool same_bits(const DVector& a, const DVector& b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](double x, double y) { return same_bits(x, y); });
}

void maybe_corrupt(const Context& ctx, DVector& v) {
  if (ctx.inject_fault && !v.empty()) v[v.size() / 2] += 1.0;
}

constexpr std::size_t kSizes[] = {0, 1, 7, 255, 256, 257, 4097, 65537, 131073, 300001};

bool check_copy(const Context& ctx, std::string& detail) {
  for (std::size_t n : kSizes) {
    const DVector x = random_vector(n, n + 1);
    DVector y(n, 0.0), ref(n, 0.0);
    bs1_copy(x, y);
    reference::copy(x, ref);
    maybe_corrupt(ctx, y);
    if (!same_bits(y, ref)) {
      detail = "mismatch at n=" + std::to_string(n);
      return false;
    }
  }
  detail = std::to_string(std::size(kSizes)) + " sizes bitwise equal";
  return true;
}

bool check_axpy(const Context&, std::string& detail) {
  for (std::size_t n : kSizes) {
    const DVector x = random_vector(n, 2 * n + 1);
    DVector y = random_vector(n, 2 * n + 2);
    DVector ref = y;
    bs2_axpy(-1.5, x, 0.25, y);
    reference::axpy(-1.5, x, 0.25, ref);
    if (!same_bits(y, ref)) {
      detail = "mismatch at n=" + std::to_string(n);
      return false;
    }
  }
  detail = "bitwise equal to sequential loop";
  return true;
}

bool check_norm_dot(const Context&, std::string& detail) {
  for (std::size_t n : kSizes) {
    const DVector x = random_vector(n, 3 * n + 1);
    const DVector y = random_vector(n, 3 * n + 2);
    const double nrm = bs3_norm2(x);
    if (!reference::close_rel(nrm, reference::norm2(x), 1e-12)) {
      detail = "norm2 off at n=" + std::to_string(n);
      return false;
    }
    if (!same_bits(bs4_dot(x, x), nrm)) {
      detail = "dot(x,x) != norm2(x) at n=" + std::to_string(n);
      return false;
    }
    if (!reference::close_rel(bs4_dot(x, y), reference::dot(x, y), 1e-12)) {
      detail = "dot off at n=" + std::to_string(n);
      return false;
    }
  }
  detail = "within 1e-12 of compensated sums";
  return true;
}

bool check_fused(const Context&, std::string& detail) {
  for (std::size_t n : kSizes) {
    const DVector p = random_vector(n, 5 * n + 1), Ap = random_vector(n, 5 * n + 2);
    DVector x = random_vector(n, 5 * n + 3), r = random_vector(n, 5 * n + 4);
    DVector x2 = x, r2 = r;
    const double beta = bs5_fused_cg_update(0.75, p, Ap, x, r);
    bs2_axpy(0.75, p, 1.0, x2);
    bs2_axpy(-0.75, Ap, 1.0, r2);
    if (!same_bits(x, x2) || !same_bits(r, r2) || !same_bits(beta, bs3_norm2(r2))) {
      detail = "fused/unfused differ at n=" + std::to_string(n);
      return false;
    }
  }
  detail = "fused update matches unfused composition bitwise";
  return true;
}

bool check_determinism(const Context&, std::string& detail) {
  const DVector x = random_vector(1000003, 11), y = random_vector(1000003, 12);
  const int saved = worker_count();
  double norm_ref = 0, dot_ref = 0;
  bool ok = true;
  const int counts[] = {1, 4, max_workers()};
  for (int i = 0; i < 3 && ok; ++i) {
    set_worker_count(counts[i]);
    const double a = bs3_norm2(x), b = bs4_dot(x, y);
    if (i == 0) {
      norm_ref = a;
      dot_ref = b;
    }
    ok = same_bits(a, norm_ref) && same_bits(b, dot_ref) && same_bits(bs4_dot(y, x), b);
  }
  set_worker_count(saved);
  detail = ok ? "bitwise identical over worker counts {1, 4, max}" : "reduction depends on worker count";
  return ok;
}

bool check_mesh_algebra(const Context&, std::string& detail) {
  for (int K = 1; K <= 3; ++K)
    for (int p = 1; p <= 5; ++p) {
      const auto m = mesh::build_mesh(K, p);
      const auto op = mesh::build_gather(m);
      const DVector mult = mesh::multiplicity(m);
      const DVector ones(static_cast<std::size_t>(m.nl), 1.0);
      if (gs::bs6_gather(op, ones) != mult) {
        detail = "gather(1) != multiplicity at K=" + std::to_string(K) + " p=" + std::to_string(p);
        return false;
      }
      const DVector qG = random_vector(static_cast<std::size_t>(m.ng), 100 * K + p);
      DVector qL(static_cast<std::size_t>(m.nl));
      gs::bs7_scatter(mesh::build_scatter_ids(m), qG, qL);
      const DVector back = gs::bs6_gather(op, qL);
      for (std::size_t g = 0; g < qG.size(); ++g)
        if (!reference::close_rel(back[g], mult[g] * qG[g], 1e-13)) {
          detail = "gather(scatter(q)) != m*q at K=" + std::to_string(K) + " p=" + std::to_string(p);
          return false;
        }
    }
  const auto m = mesh::build_mesh(2, 1);
  std::map<int, int> hist;
  for (double v : mesh::multiplicity(m)) ++hist[static_cast<int>(v)];
  if (hist != std::map<int, int>{{1, 8}, {2, 12}, {4, 6}, {8, 1}}) {
    detail = "K=2 p=1 multiplicity histogram wrong";
    return false;
  }
  detail = "K<=3, p<=5 gather/scatter identities hold";
  return true;
}

bool check_cg(const Context&, std::string& detail) {
  const DVector b = random_vector(40, 21);
  const DVector zero(b.size(), 0.0);
  auto id = cg::cg_solve(cg::DiagonalOperator(DVector(b.size(), 1.0)), b, zero);
  if (id.iterations != 1 || !same_bits(id.x, b)) {
    detail = "identity operator did not converge in one step";
    return false;
  }
  DVector diag(64);
  for (std::size_t i = 0; i < diag.size(); ++i) diag[i] = 1.0 + static_cast<double>(i % 4);
  const DVector b64 = random_vector(64, 22);
  auto dres = cg::cg_solve(cg::DiagonalOperator(diag), b64, DVector(64, 0.0));
  if (!dres.converged || dres.iterations > 4) {
    detail = "4 distinct eigenvalues took " + std::to_string(dres.iterations) + " iterations";
    return false;
  }
  const auto A = cg::DenseOperator::random_spd(50, 23);
  const DVector b50 = random_vector(50, 24);
  cg::CGOptions opts;
  opts.max_iterations = 55;
  auto fused = cg::cg_solve(A, b50, DVector(50, 0.0), opts);
  opts.fused = false;
  auto unfused = cg::cg_solve(A, b50, DVector(50, 0.0), opts);
  DVector Ax(50);
  A(fused.x, Ax);
  double res = 0.0;
  for (std::size_t i = 0; i < 50; ++i) res += (b50[i] - Ax[i]) * (b50[i] - Ax[i]);
  if (!(res <= 1e-18 * reference::norm2(b50))) {
    detail = "dense SPD residual too large";
    return false;
  }
  if (!same_bits(fused.x, unfused.x)) {
    detail = "fused and unfused CG differ";
    return false;
  }
  detail = "identity, diagonal and dense SPD cases converge";
  return true;
}

bool check_fit(const Context&, std::string& detail) {
  const double T0 = 5e-6, W = 8e11;
  std::vector<double> B, t;
  for (int i = 0; i < 100; ++i) {
    B.push_back(1e3 * std::pow(1e5, i / 99.0));
    t.push_back(T0 + B.back() / W);
  }
  const auto exact = model::fit_time_model(B, t);
  if (!reference::close_rel(exact.T0, T0, 1e-10) || !reference::close_rel(exact.Wmax, W, 1e-10) ||
      !reference::close_rel(exact.r2, 1.0, 1e-12)) {
    detail = "exact model data not recovered";
    return false;
  }
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 0.01);
    std::vector<double> tn(t);
    for (double& v : tn) v *= 1.0 + noise(rng);
    const auto f = model::fit_time_model(B, tn);
    if (std::abs(f.T0 / T0 - 1) > 0.10 || std::abs(f.Wmax / W - 1) > 0.02) {
      detail = "noisy fit out of tolerance at seed " + std::to_string(seed);
      return false;
    }
  }
  const model::ModelFit v100{7.62e-6, 809e9, 1.0, 2, false};
  if (std::abs(model::efficiency_point(v100, 0.8) / 24e6 - 1) > 0.05) {
    detail = "V100 BS3 Fischer-Brown point off";
    return false;
  }
  detail = "exact and 1%-noise fits recover T0 and Wmax";
  return true;
}

}  // namespace

const std::vector<Check>& checks() {
  static const std::vector<Check> all = {
      {"kernels.bs1_copy", check_copy},
      {"kernels.bs2_axpy", check_axpy},
      {"kernels.bs3_bs4_reductions", check_norm_dot},
      {"kernels.bs5_fused_update", check_fused},
      {"kernels.determinism", check_determinism},
      {"gs.mesh_algebra", check_mesh_algebra},
      {"cg.convergence", check_cg},
      {"model.fit_recovery", check_fit},
  };
  return all;
}

Summary run(std::ostream& os, const Context& ctx, const std::string& filter) {
  Summary sum;
  for (const Check& c : checks()) {
    if (!filter.empty() && c.name.find(filter) == std::string::npos) continue;
    std::string detail;
    bool ok = false;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      ok = c.run(ctx, detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    os << (ok ? "[PASS] " : "[FAIL] ") << c.name << " (" << static_cast<long>(ms) << " ms): " << detail << '\n';
    (ok ? sum.passed : sum.failed)++;
  }
  os << sum.passed << " passed, " << sum.failed << " failed\n";
  return sum;
}

}  // namespace streambench::selftest

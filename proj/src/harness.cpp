#include "streambench/harness.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <new>
#include <random>
#include <sstream>
#include <string>

#include "streambench/gs.hpp"
#include "streambench/reference.hpp"

namespace streambench::harness {

using namespace streambench::kernels;

void SweepPlan::validate() const {
  if (trials < 1) throw std::invalid_argument("sweep: trials must be >= 1");
  if (warmup < 0) throw std::invalid_argument("sweep: warmup must be >= 0");
  if (is_mesh_test(test)) {
    if (meshes.empty()) throw std::invalid_argument("sweep: no mesh sizes for " + std::string(test_name(test)));
    std::int64_t prev = -1;
    for (const MeshSize& m : meshes) {
      if (m.K < 1 || m.p < 1) throw std::invalid_argument("sweep: mesh K and p must be >= 1");
      const std::int64_t np = m.p + 1;
      const std::int64_t nl = std::int64_t{m.K} * m.K * m.K * np * np * np;
      if (nl <= prev) throw std::invalid_argument("sweep: mesh sizes must be strictly ascending");
      prev = nl;
    }
  } else {
    if (sizes.empty()) throw std::invalid_argument("sweep: no sizes for " + std::string(test_name(test)));
    if (sizes.front() < 1) throw std::invalid_argument("sweep: sizes must be >= 1");
    for (std::size_t i = 1; i < sizes.size(); ++i)
      if (sizes[i] <= sizes[i - 1]) throw std::invalid_argument("sweep: sizes must be strictly ascending");
  }
}

std::vector<std::int64_t> geometric_sizes(std::int64_t min_n, std::int64_t max_n, int points) {
  if (min_n < 1 || max_n < min_n)
    throw std::invalid_argument("geometric_sizes: need 1 <= min_n <= max_n, got [" + std::to_string(min_n) + ", " +
                                std::to_string(max_n) + "]");
  if (points < 1) throw std::invalid_argument("geometric_sizes: points must be >= 1");

  const std::int64_t span = max_n - min_n + 1;
  if (span <= points) {
    std::vector<std::int64_t> all(static_cast<std::size_t>(span));
    for (std::int64_t i = 0; i < span; ++i) all[i] = min_n + i;
    return all;
  }
  if (points == 1) return {min_n};

  std::vector<std::int64_t> out(static_cast<std::size_t>(points));
  const double lmin = std::log(static_cast<double>(min_n));
  const double lmax = std::log(static_cast<double>(max_n));
  for (int i = 0; i < points; ++i) {
    const double frac = static_cast<double>(i) / (points - 1);
    out[i] = std::llround(std::exp(lmin + frac * (lmax - lmin)));
  }
  out.front() = min_n;
  out.back() = max_n;
  // Rounding collisions only happen where the step is < 1, i.e. at the low end.
  for (int i = 1; i < points; ++i) out[i] = std::max(out[i], out[i - 1] + 1);
  for (int i = points - 1; i > 0 && out[i] > max_n - (points - 1 - i); --i) out[i] = max_n - (points - 1 - i);
  return out;
}

std::vector<MeshSize> mesh_range(int kmin, int kmax, int p) {
  if (kmin < 1 || kmax < kmin)
    throw std::invalid_argument("mesh_range: need 1 <= kmin <= kmax, got [" + std::to_string(kmin) + ", " +
                                std::to_string(kmax) + "]");
  std::vector<MeshSize> out;
  for (int K = kmin; K <= kmax; ++K) out.push_back({K, p});
  return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class InputSource {
 public:
  InputSource(std::uint64_t seed, std::uint64_t key) : rng_(splitmix64(seed ^ splitmix64(key))) {}
  DVector vector(std::size_t n) {
    DVector v(n);
    for (double& x : v) x = dist_(rng_);
    return v;
  }

 private:
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> dist_{-1.0, 1.0};
};

double time_batch(const std::function<void()>& invoke, int warmup, int trials) {
  for (int i = 0; i < warmup; ++i) invoke();
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < trials; ++i) invoke();
  const auto t1 = std::chrono::steady_clock::now();
  const double elapsed = std::chrono::duration<double>(t1 - t0).count();
  // A batch always takes at least one clock tick.
  constexpr double tick = static_cast<double>(std::chrono::steady_clock::period::num) /
                          std::chrono::steady_clock::period::den;
  return std::max(elapsed, tick);
}

double sum_of(const DVector& v) {
  reference::CompensatedSum s;
  for (double x : v) s.add(x);
  return s.value();
}

bool bitwise_equal(const DVector& a, const DVector& b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](double x, double y) {
           return std::bit_cast<std::uint64_t>(x) == std::bit_cast<std::uint64_t>(y);
         });
}

// Run-time validation tolerance for reductions, scaled by sum |terms| so
// cancellation in a dot product cannot trigger a false alarm.
constexpr double kReductionRel = 1e-12;

constexpr double kAxpyAlpha = 0.5;
constexpr double kAxpyBeta = 0.5;
constexpr double kCgAlpha = 1e-3;

std::string size_label(const BandwidthSample& s) {
  std::ostringstream os;
  os << test_name(s.test);
  if (s.n_elements) os << " n=" << *s.n_elements;
  if (s.K) os << " K=" << *s.K << " p=" << *s.order;
  return os.str();
}

BandwidthSample run_vector_point(BsTest test, std::int64_t n, const SweepPlan& plan, const ReductionConfig& cfg) {
  BandwidthSample s;
  s.test = test;
  s.n_elements = n;
  s.bytes = bytes_moved(test, n);
  s.trials = plan.trials;
  const int total = plan.warmup + plan.trials;
  const auto len = static_cast<std::size_t>(n);
  InputSource src(plan.seed, static_cast<std::uint64_t>(n));
  bool ok = true;

  switch (test) {
    case BsTest::BS1: {
      const DVector x = src.vector(len);
      DVector y(len, 0.0);
      s.elapsed_s = time_batch([&] { bs1_copy(x, y); }, plan.warmup, plan.trials);
      ok = bitwise_equal(x, y);
      s.checksum = sum_of(y);
      break;
    }
    case BsTest::BS2: {
      const DVector x = src.vector(len);
      DVector y = src.vector(len);
      DVector expect = y;
      s.elapsed_s = time_batch([&] { bs2_axpy(kAxpyAlpha, x, kAxpyBeta, y); }, plan.warmup, plan.trials);
      for (int t = 0; t < total; ++t) reference::axpy(kAxpyAlpha, x, kAxpyBeta, expect);
      ok = bitwise_equal(expect, y);
      s.checksum = sum_of(y);
      break;
    }
    case BsTest::BS3: {
      const DVector x = src.vector(len);
      double result = 0.0;
      s.elapsed_s = time_batch([&] { result = bs3_norm2(x, cfg); }, plan.warmup, plan.trials);
      const double ref = reference::norm2(x);
      ok = reference::close_rel(result, ref, kReductionRel);
      s.checksum = result;
      break;
    }
    case BsTest::BS4: {
      const DVector x = src.vector(len);
      const DVector y = src.vector(len);
      double result = 0.0;
      s.elapsed_s = time_batch([&] { result = bs4_dot(x, y, cfg); }, plan.warmup, plan.trials);
      reference::CompensatedSum mag;
      for (std::size_t i = 0; i < len; ++i) mag.add(std::abs(x[i] * y[i]));
      ok = reference::close_rel(result, reference::dot(x, y), kReductionRel, mag.value());
      s.checksum = result;
      break;
    }
    case BsTest::BS5: {
      const DVector p = src.vector(len);
      const DVector Ap = src.vector(len);
      DVector x = src.vector(len);
      DVector r = src.vector(len);
      DVector x_ref = x, r_ref = r;
      double result = 0.0;
      s.elapsed_s =
          time_batch([&] { result = bs5_fused_cg_update(kCgAlpha, p, Ap, x, r, cfg); }, plan.warmup, plan.trials);
      double ref = reference::norm2(r_ref);
      for (int t = 0; t < total; ++t) ref = reference::cg_update(kCgAlpha, p, Ap, x_ref, r_ref);
      ok = bitwise_equal(x, x_ref) && bitwise_equal(r, r_ref) && reference::close_rel(result, ref, kReductionRel);
      s.checksum = result;
      break;
    }
    default:
      throw std::logic_error("run_vector_point: mesh test");
  }
  s.bandwidth_GBps = static_cast<double>(s.bytes) * s.trials / s.elapsed_s / 1e9;
  if (!ok) throw std::runtime_error("validation failed for " + size_label(s));
  return s;
}

BandwidthSample run_mesh_point(BsTest test, MeshSize size, const SweepPlan& plan) {
  const mesh::MeshConnectivity m = mesh::build_mesh(size.K, size.p);
  BandwidthSample s;
  s.test = test;
  s.order = size.p;
  s.K = size.K;
  s.nl = m.nl;
  s.ng = m.ng;
  s.bytes = bytes_moved(test, 0, m.dofs());
  s.trials = plan.trials;
  InputSource src(plan.seed, (std::uint64_t{static_cast<std::uint32_t>(size.K)} << 32) |
                                 static_cast<std::uint32_t>(size.p));
  bool ok = true;

  if (test == BsTest::BS6) {
    const mesh::GatherOp op = mesh::build_gather(m, plan.nodes_per_block);
    const DVector qL = src.vector(static_cast<std::size_t>(m.nl));
    DVector qG(static_cast<std::size_t>(m.ng), 0.0);
    s.elapsed_s = time_batch([&] { gs::bs6_gather(op, qL, qG); }, plan.warmup, plan.trials);
    DVector expect(qG.size());
    reference::gather(op, qL, expect);
    ok = bitwise_equal(expect, qG);
    s.checksum = sum_of(qG);
  } else {
    const mesh::ScatterIds ids = mesh::build_scatter_ids(m);
    const DVector qG = src.vector(static_cast<std::size_t>(m.ng));
    DVector qL(static_cast<std::size_t>(m.nl), 0.0);
    s.elapsed_s = time_batch([&] { gs::bs7_scatter(ids, qG, qL); }, plan.warmup, plan.trials);
    DVector expect(qL.size(), 0.0);
    reference::scatter(ids.ids, qG, expect);
    ok = bitwise_equal(expect, qL);
    s.checksum = sum_of(qL);
  }
  s.bandwidth_GBps = static_cast<double>(s.bytes) * s.trials / s.elapsed_s / 1e9;
  if (!ok) throw std::runtime_error("validation failed for " + size_label(s));
  return s;
}

}  // namespace

std::vector<BandwidthSample> run_sweep(const SweepPlan& plan, const ReductionConfig& cfg) {
  plan.validate();
  cfg.validate();
  std::vector<BandwidthSample> samples;
  const std::size_t points = is_mesh_test(plan.test) ? plan.meshes.size() : plan.sizes.size();
  for (std::size_t i = 0; i < points; ++i) {
    std::string where;
    if (is_mesh_test(plan.test))
      where = "K=" + std::to_string(plan.meshes[i].K) + " p=" + std::to_string(plan.meshes[i].p);
    else
      where = "n=" + std::to_string(plan.sizes[i]);
    try {
      samples.push_back(is_mesh_test(plan.test) ? run_mesh_point(plan.test, plan.meshes[i], plan)
                                                : run_vector_point(plan.test, plan.sizes[i], plan, cfg));
    } catch (const std::bad_alloc&) {
      throw SweepError(std::string(test_name(plan.test)) + ": allocation failed at " + where, std::move(samples));
    } catch (const SweepError&) {
      throw;
    } catch (const std::exception& e) {
      throw SweepError(std::string(test_name(plan.test)) + " at " + where + ": " + e.what(), std::move(samples));
    }
  }
  return samples;
}

}  // namespace streambench::harness

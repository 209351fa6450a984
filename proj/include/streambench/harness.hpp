#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "streambench/core.hpp"
#include "streambench/kernels.hpp"
#include "streambench/mesh.hpp"

namespace streambench::harness {

struct MeshSize {
  int K = 2;
  int p = 7;
};

struct SweepPlan {
  BsTest test = BsTest::BS1;
  /// Vector lengths for BS1-BS5, strictly ascending.
  std::vector<std::int64_t> sizes;
  /// Meshes for BS6-BS7, strictly ascending in local dof count.
  std::vector<MeshSize> meshes;
  int trials = 20;
  int warmup = 1;
  std::uint64_t seed = 0;
  int nodes_per_block = mesh::kDefaultNodesPerBlock;

  /// Throws std::invalid_argument describing the first violated invariant.
  void validate() const;
};

/// One timed batch: `trials` back-to-back invocations between two clock reads.
struct BandwidthSample {
  BsTest test = BsTest::BS1;
  std::optional<int> order;               // BS6/BS7 only
  std::optional<int> K;                   // BS6/BS7 only
  std::optional<std::int64_t> n_elements; // BS1-BS5 only
  std::optional<std::int64_t> nl;         // BS6/BS7 only
  std::optional<std::int64_t> ng;         // BS6/BS7 only
  std::uint64_t bytes = 0;                // per invocation
  int trials = 0;
  double elapsed_s = 0.0;                 // whole batch
  double bandwidth_GBps = 0.0;            // bytes * trials / elapsed / 1e9
  /// Scalar result of the last invocation (BS3-BS5) or the sum of the output
  /// vector. Not part of the CSV; lets callers compare runs.
  double checksum = 0.0;

  double seconds_per_trial() const { return elapsed_s / trials; }
};

/// Raised when a sweep cannot finish. Samples completed before the failure are kept.
class SweepError : public std::runtime_error {
 public:
  SweepError(const std::string& what, std::vector<BandwidthSample> partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const std::vector<BandwidthSample>& partial() const { return partial_; }

 private:
  std::vector<BandwidthSample> partial_;
};

/// `points` values rounded from a geometric progression over [min_n, max_n],
/// ascending and distinct. Where rounding collides at the low end, values are
/// bumped to the next free integer; if the range holds fewer than `points`
/// integers, every integer in it is returned.
std::vector<std::int64_t> geometric_sizes(std::int64_t min_n, std::int64_t max_n, int points);

/// Meshes K = kmin..kmax at fixed order p.
std::vector<MeshSize> mesh_range(int kmin, int kmax, int p);

/// Runs the plan. Inputs are seeded per size from plan.seed with values in [-1, 1].
/// Each size gets `warmup` untimed invocations, then one timed batch, then the
/// final outputs are checked against a sequential replay (outside the timed region).
std::vector<BandwidthSample> run_sweep(const SweepPlan& plan, const kernels::ReductionConfig& cfg = {});

}  // namespace streambench::harness

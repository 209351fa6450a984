#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "streambench/mesh.hpp"

using namespace streambench;
using namespace streambench::mesh;

TEST_CASE("build_mesh sizes") {
  const auto m11 = build_mesh(1, 1);
  CHECK(m11.nl == 8);
  CHECK(m11.ng == 8);
  std::vector<Index> iota(8);
  std::iota(iota.begin(), iota.end(), 0);
  CHECK(m11.local_to_global == iota);

  const auto m21 = build_mesh(2, 1);
  CHECK(m21.nl == 64);
  CHECK(m21.ng == 27);

  const auto m37 = build_mesh(3, 7);
  CHECK(m37.nl == 13824);
  CHECK(m37.ng == 10648);
}

TEST_CASE("build_mesh numbering matches the lattice formula") {
  for (int K : {1, 2, 3})
    for (int p : {1, 2, 4}) {
      const auto m = build_mesh(K, p);
      const int np = p + 1, side = K * p + 1;
      bool ok = true;
      for (int e = 0; e < K * K * K; ++e) {
        const int ex = e % K, ey = (e / K) % K, ez = e / (K * K);
        for (int k = 0; k < np; ++k)
          for (int j = 0; j < np; ++j)
            for (int i = 0; i < np; ++i) {
              const int n = e * np * np * np + k * np * np + j * np + i;
              const int want = ((ez * p + k) * side + (ey * p + j)) * side + (ex * p + i);
              ok &= m.local_to_global[n] == want;
            }
      }
      CHECK(ok);
    }
}

TEST_CASE("build_mesh invariants") {
  for (int K = 1; K <= 3; ++K)
    for (int p = 1; p <= 5; ++p) {
      const auto m = build_mesh(K, p);
      const std::set<Index> seen(m.local_to_global.begin(), m.local_to_global.end());
      CHECK(static_cast<Index>(seen.size()) == m.ng);  // full column coverage
      CHECK(*seen.begin() == 0);
      CHECK(*seen.rbegin() == m.ng - 1);
      const int npe = m.nodes_per_element();
      for (int e = 0; e < K * K * K; ++e) {
        const std::set<Index> local(m.local_to_global.begin() + e * npe, m.local_to_global.begin() + (e + 1) * npe);
        CHECK(static_cast<int>(local.size()) == npe);  // injective per element
      }
    }
}

TEST_CASE("build_mesh errors") {
  CHECK_THROWS_AS(build_mesh(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_mesh(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_mesh(1300, 1), std::invalid_argument);  // NG overflows 32 bits
  CHECK_THROWS_AS(build_mesh(200, 7), std::invalid_argument);   // NL overflows 32 bits
}

TEST_CASE("multiplicity") {
  const auto m1 = multiplicity(build_mesh(1, 1));
  CHECK(m1 == std::vector<double>(8, 1.0));

  const auto m2 = multiplicity(build_mesh(2, 1));
  std::map<int, int> hist;
  for (double v : m2) ++hist[static_cast<int>(v)];
  CHECK(hist == std::map<int, int>{{1, 8}, {2, 12}, {4, 6}, {8, 1}});
  CHECK(std::accumulate(m2.begin(), m2.end(), 0.0) == 64.0);

  const auto m22 = multiplicity(build_mesh(2, 2));
  CHECK(std::accumulate(m22.begin(), m22.end(), 0.0) == 216.0);
  CHECK(*std::max_element(m22.begin(), m22.end()) == 8.0);

  for (int K = 1; K <= 3; ++K)
    for (int p = 1; p <= 4; ++p) CHECK(multiplicity(build_mesh(K, p)) == oracle::lattice_multiplicity(K, p));
}

TEST_CASE("element-interior nodes are unshared for p >= 2") {
  for (int p = 2; p <= 5; ++p) {
    const auto m = build_mesh(3, p);
    const auto mult = multiplicity(m);
    const int np = p + 1;
    bool ok = true;
    for (int e = 0; e < 27; ++e)
      for (int k = 1; k < p; ++k)
        for (int j = 1; j < p; ++j)
          for (int i = 1; i < p; ++i) ok &= mult[m.local_to_global[e * np * np * np + (k * np + j) * np + i]] == 1.0;
    CHECK(ok);
  }
}

TEST_CASE("build_scatter_ids") {
  const auto m11 = build_mesh(1, 1);
  CHECK(build_scatter_ids(m11).ids == std::vector<Index>{0, 1, 2, 3, 4, 5, 6, 7});

  const auto m = build_mesh(2, 1);
  const std::vector<Index> center{13};
  const auto ids = build_scatter_ids(m, center);
  CHECK(std::count(ids.ids.begin(), ids.ids.end(), -1) == oracle::occurrences(m.local_to_global).at(13));
  CHECK(std::count(ids.ids.begin(), ids.ids.end(), -1) == 8);
  for (std::size_t n = 0; n < ids.ids.size(); ++n)
    if (ids.ids[n] >= 0) CHECK(ids.ids[n] == m.local_to_global[n]);

  std::vector<Index> all(static_cast<std::size_t>(m.ng));
  std::iota(all.begin(), all.end(), 0);
  const auto full = build_scatter_ids(m, all);
  CHECK(std::all_of(full.ids.begin(), full.ids.end(), [](Index i) { return i == -1; }));

  const std::vector<Index> bad{27};
  CHECK_THROWS_AS(build_scatter_ids(m, bad), std::out_of_range);
  const std::vector<Index> negative{-1};
  CHECK_THROWS_AS(build_scatter_ids(m, negative), std::out_of_range);
}

namespace {
void check_gather_invariants(const MeshConnectivity& m, const GatherOp& op) {
  REQUIRE(op.row_starts.size() == static_cast<std::size_t>(m.ng) + 1);
  CHECK(op.row_starts.front() == 0);
  CHECK(op.row_starts.back() == m.nl);
  const auto mult = multiplicity(m);
  for (Index r = 0; r < m.ng; ++r) {
    CHECK(op.row_length(r) >= 1);
    CHECK(op.row_length(r) == mult[r]);
    CHECK(std::is_sorted(op.col_ids.begin() + op.row_starts[r], op.col_ids.begin() + op.row_starts[r + 1]));
    for (Index c = op.row_starts[r]; c < op.row_starts[r + 1]; ++c) CHECK(m.local_to_global[op.col_ids[c]] == r);
  }
  auto sorted = op.col_ids;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Index> iota(static_cast<std::size_t>(m.nl));
  std::iota(iota.begin(), iota.end(), 0);
  CHECK(sorted == iota);

  // Blocks cover all rows contiguously; every block but the last is full.
  CHECK(op.block_starts.front() == 0);
  CHECK(op.block_starts.back() == m.ng);
  for (Index b = 0; b < op.n_blocks(); ++b) {
    const Index lo = op.block_starts[b], hi = op.block_starts[b + 1];
    CHECK(lo < hi);
    const Index nnz = op.row_starts[hi] - op.row_starts[lo];
    CHECK(nnz <= op.nodes_per_block);
    if (b + 1 < op.n_blocks()) CHECK(nnz + op.row_length(hi) > op.nodes_per_block);
  }
}
}  // namespace

TEST_CASE("build_gather examples") {
  const auto m11 = build_mesh(1, 1);
  const auto op11 = build_gather(m11, 512);
  CHECK(op11.row_starts == std::vector<Index>{0, 1, 2, 3, 4, 5, 6, 7, 8});
  CHECK(op11.block_starts == std::vector<Index>{0, 8});

  const auto m21 = build_mesh(2, 1);
  const auto op21 = build_gather(m21, 512);
  CHECK(op21.row_starts[27] == 64);
  CHECK(op21.row_length(13) == 8);
  CHECK(op21.row_length(13) == oracle::occurrences(m21.local_to_global).at(13));

  const auto m22 = build_mesh(2, 2);
  const auto op22 = build_gather(m22, 16);
  CHECK(op22.ng == 125);
  check_gather_invariants(m22, op22);
}

TEST_CASE("build_gather invariants over meshes and block sizes") {
  for (int K = 1; K <= 3; ++K)
    for (int p = 1; p <= 4; ++p)
      for (int npb : {8, 9, 64, 512}) {
        INFO("K=" << K << " p=" << p << " npb=" << npb);
        const auto m = build_mesh(K, p);
        check_gather_invariants(m, build_gather(m, npb));
      }
}

TEST_CASE("build_gather rejects blocks smaller than a row") {
  const auto m = build_mesh(2, 1);
  CHECK_THROWS_AS(build_gather(m, 7), std::invalid_argument);
  CHECK_THROWS_AS(build_gather(m, 0), std::invalid_argument);
  CHECK_NOTHROW(build_gather(m, 8));
  CHECK_NOTHROW(build_gather(build_mesh(1, 3), 1));  // no sharing on a single element
}

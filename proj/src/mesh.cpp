#include "streambench/mesh.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace streambench::mesh {

MeshConnectivity build_mesh(int K, int p) {
  if (K < 1) throw std::invalid_argument("build_mesh: K must be >= 1, got " + std::to_string(K));
  if (p < 1) throw std::invalid_argument("build_mesh: p must be >= 1, got " + std::to_string(p));

  constexpr std::int64_t kMaxId = std::numeric_limits<Index>::max();
  const std::int64_t k64 = K;
  const std::int64_t np = p + 1;
  const std::int64_t side = k64 * p + 1;
  // Guard each factor before multiplying so the checks themselves cannot overflow.
  if (side > 1291 || k64 > 1291) throw std::invalid_argument("build_mesh: mesh too large for 32-bit ids");
  const std::int64_t nl = k64 * k64 * k64 * np * np * np;
  const std::int64_t ng = side * side * side;
  if (nl > kMaxId || ng > kMaxId)
    throw std::invalid_argument("build_mesh: K=" + std::to_string(K) + ", p=" + std::to_string(p) +
                                " overflows 32-bit ids");

  MeshConnectivity mesh;
  mesh.K = K;
  mesh.p = p;
  mesh.nl = static_cast<Index>(nl);
  mesh.ng = static_cast<Index>(ng);
  mesh.local_to_global.resize(static_cast<std::size_t>(nl));

  std::size_t n = 0;
  for (std::int64_t ez = 0; ez < K; ++ez)
    for (std::int64_t ey = 0; ey < K; ++ey)
      for (std::int64_t ex = 0; ex < K; ++ex)
        for (std::int64_t k = 0; k < np; ++k)
          for (std::int64_t j = 0; j < np; ++j)
            for (std::int64_t i = 0; i < np; ++i) {
              const std::int64_t a = ex * p + i;
              const std::int64_t b = ey * p + j;
              const std::int64_t c = ez * p + k;
              mesh.local_to_global[n++] = static_cast<Index>((c * side + b) * side + a);
            }
  return mesh;
}

ScatterIds build_scatter_ids(const MeshConnectivity& mesh, std::span<const Index> mask) {
  std::vector<char> masked(static_cast<std::size_t>(mesh.ng), 0);
  for (Index g : mask) {
    if (g < 0 || g >= mesh.ng)
      throw std::out_of_range("build_scatter_ids: mask id " + std::to_string(g) + " outside [0, " +
                              std::to_string(mesh.ng) + ")");
    masked[g] = 1;
  }
  ScatterIds out;
  out.ng = mesh.ng;
  out.ids = mesh.local_to_global;
  if (!mask.empty())
    for (Index& id : out.ids)
      if (masked[id]) id = -1;
  return out;
}

GatherOp build_gather(const MeshConnectivity& mesh, int nodes_per_block) {
  if (nodes_per_block < 1) throw std::invalid_argument("build_gather: nodes_per_block must be >= 1");

  GatherOp op;
  op.ng = mesh.ng;
  op.nl = mesh.nl;
  op.nodes_per_block = nodes_per_block;

  // Counting sort by global id; scanning n upward leaves each row ascending.
  op.row_starts.assign(static_cast<std::size_t>(mesh.ng) + 1, 0);
  for (Index g : mesh.local_to_global) ++op.row_starts[g + 1];
  for (Index r = 0; r < mesh.ng; ++r) op.row_starts[r + 1] += op.row_starts[r];

  op.col_ids.resize(static_cast<std::size_t>(mesh.nl));
  std::vector<Index> cursor(op.row_starts.begin(), op.row_starts.end() - 1);
  for (Index n = 0; n < mesh.nl; ++n) op.col_ids[cursor[mesh.local_to_global[n]]++] = n;

  // Greedy first-fit packing of consecutive rows.
  op.block_starts.push_back(0);
  Index in_block = 0;
  for (Index r = 0; r < mesh.ng; ++r) {
    const Index len = op.row_length(r);
    if (len > nodes_per_block)
      throw std::invalid_argument("build_gather: row " + std::to_string(r) + " has " + std::to_string(len) +
                                  " nonzeros, more than nodes_per_block=" + std::to_string(nodes_per_block));
    if (in_block + len > nodes_per_block) {
      op.block_starts.push_back(r);
      in_block = 0;
    }
    in_block += len;
  }
  if (mesh.ng > 0) op.block_starts.push_back(mesh.ng);
  return op;
}

DVector multiplicity(const MeshConnectivity& mesh) {
  DVector m(static_cast<std::size_t>(mesh.ng), 0.0);
  for (Index g : mesh.local_to_global) m[g] += 1.0;
  return m;
}

}  // namespace streambench::mesh

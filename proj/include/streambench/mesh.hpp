#pragma once

#include <span>
#include <vector>

#include "streambench/core.hpp"

namespace streambench::mesh {

/// Structured K x K x K hexahedral mesh of order p, stored as a plain
/// local-to-global map. Nothing downstream relies on the lattice structure.
struct MeshConnectivity {
  int K = 0;
  int p = 0;
  Index nl = 0;  // K^3 (p+1)^3
  Index ng = 0;  // (K p + 1)^3
  /// Element-major; inside an element node (i,j,k) sits at k(p+1)^2 + j(p+1) + i.
  std::vector<Index> local_to_global;

  int nodes_per_element() const { return (p + 1) * (p + 1) * (p + 1); }
  DofCounts dofs() const { return {nl, ng}; }
};

/// Z as an index map: ids[n] is the global id of local node n, or -1 if masked.
struct ScatterIds {
  Index ng = 0;
  std::vector<Index> ids;
};

/// Z^T in CSR form without values (they are all one), with rows grouped into
/// blocks of roughly nodes_per_block nonzeros.
struct GatherOp {
  Index ng = 0;
  Index nl = 0;
  std::vector<Index> row_starts;    // ng + 1
  std::vector<Index> col_ids;       // nl, ascending within each row
  std::vector<Index> block_starts;  // n_blocks + 1 row offsets
  int nodes_per_block = 0;

  Index n_blocks() const { return static_cast<Index>(block_starts.size()) - 1; }
  Index row_length(Index row) const { return row_starts[row + 1] - row_starts[row]; }
};

inline constexpr int kDefaultNodesPerBlock = 512;

/// Lexicographic lattice numbering gid(a,b,c) = c (Kp+1)^2 + b (Kp+1) + a.
/// Throws std::invalid_argument for K < 1, p < 1, or when NL/NG overflow 32-bit ids.
MeshConnectivity build_mesh(int K, int p);

/// Throws std::out_of_range if a mask id is outside [0, NG).
ScatterIds build_scatter_ids(const MeshConnectivity& mesh, std::span<const Index> mask = {});

/// Throws std::invalid_argument if some row has more than nodes_per_block nonzeros.
GatherOp build_gather(const MeshConnectivity& mesh, int nodes_per_block = kDefaultNodesPerBlock);

/// Number of local copies of each global node (Z^T applied to ones).
DVector multiplicity(const MeshConnectivity& mesh);

}  // namespace streambench::mesh

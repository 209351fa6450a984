#include "streambench/gs.hpp"

#include <stdexcept>
#include <string>

#include "streambench/parallel.hpp"

namespace streambench::gs {

namespace {
void check_length(std::size_t got, std::int64_t want, const char* what) {
  if (static_cast<std::int64_t>(got) != want)
    throw std::invalid_argument(std::string(what) + ": expected length " + std::to_string(want) + ", got " +
                                std::to_string(got));
}
}  // namespace

void bs6_gather(const mesh::GatherOp& op, std::span<const double> qL, std::span<double> qG) {
  check_length(qL.size(), op.nl, "bs6_gather input");
  check_length(qG.size(), op.ng, "bs6_gather output");
  const Index* row_starts = op.row_starts.data();
  const Index* col_ids = op.col_ids.data();
  const Index* block_starts = op.block_starts.data();

  parallel_for(0, op.n_blocks(), [&](std::int64_t b) {
    const Index row_end = block_starts[b + 1];
    for (Index row = block_starts[b]; row < row_end; ++row) {
      double gq = 0.0;
      for (Index c = row_starts[row]; c < row_starts[row + 1]; ++c) gq += qL[col_ids[c]];
      qG[row] = gq;
    }
  });
}

DVector bs6_gather(const mesh::GatherOp& op, std::span<const double> qL) {
  DVector qG(static_cast<std::size_t>(op.ng));
  bs6_gather(op, qL, qG);
  return qG;
}

void bs7_scatter(const mesh::ScatterIds& ids, std::span<const double> qG, std::span<double> qL) {
  check_length(qG.size(), ids.ng, "bs7_scatter input");
  check_length(qL.size(), static_cast<std::int64_t>(ids.ids.size()), "bs7_scatter output");
  const Index* id = ids.ids.data();
  parallel_chunks(static_cast<std::int64_t>(qL.size()), [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t n = lo; n < hi; ++n) {
      const Index g = id[n];
      if (g >= 0) qL[n] = qG[g];
    }
  });
}

}  // namespace streambench::gs

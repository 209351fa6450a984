#pragma once

#include <span>

#include "streambench/core.hpp"
#include "streambench/mesh.hpp"

namespace streambench::gs {

/// BS6: qG = Z^T qL. Rows are summed in ascending column order, one task per row block.
void bs6_gather(const mesh::GatherOp& op, std::span<const double> qL, std::span<double> qG);
DVector bs6_gather(const mesh::GatherOp& op, std::span<const double> qL);

/// BS7: qL = Z qG. Masked entries (negative ids) are left untouched.
void bs7_scatter(const mesh::ScatterIds& ids, std::span<const double> qG, std::span<double> qL);

}  // namespace streambench::gs

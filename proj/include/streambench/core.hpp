#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace streambench {

/// Dense 64-bit float vector; every streaming kernel reads and writes these.
using DVector = std::vector<double>;

/// 32-bit signed index used by all id arrays (negative values are sentinels).
using Index = std::int32_t;

enum class BsTest { BS1 = 1, BS2, BS3, BS4, BS5, BS6, BS7 };

inline constexpr BsTest kAllTests[] = {BsTest::BS1, BsTest::BS2, BsTest::BS3, BsTest::BS4,
                                       BsTest::BS5, BsTest::BS6, BsTest::BS7};

/// Lower-case name, e.g. "bs3".
std::string_view test_name(BsTest test);

/// Parses "bs1".."bs7" (case-insensitive). Throws std::invalid_argument otherwise.
BsTest parse_test(std::string_view name);

/// True for the gather/scatter tests, which are sized by a mesh instead of a vector length.
constexpr bool is_mesh_test(BsTest test) { return test == BsTest::BS6 || test == BsTest::BS7; }

struct DofCounts {
  std::int64_t nl = 0;  // local (scattered) dofs
  std::int64_t ng = 0;  // global (gathered) dofs
};

/// Bytes moved by one invocation of `test`.
///
/// Each logical array traversal is counted once at its element width (8-byte
/// floats, 4-byte indices):
///   BS1 16n, BS2 24n, BS3 8n, BS4 16n, BS5 48n,
///   BS6 12 NL + 8 NG + 4 (NG + 1), BS7 12 NL + 8 NG.
/// Reduction partials and blockStarts are not counted. BS6/BS7 ignore `n` and
/// require `dofs`.
std::uint64_t bytes_moved(BsTest test, std::int64_t n, std::optional<DofCounts> dofs = {});

/// Bytes per vector element for BS1-BS5; throws for BS6/BS7.
std::uint64_t bytes_per_element(BsTest test);

}  // namespace streambench

#include "streambench/core.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace streambench {

std::string_view test_name(BsTest test) {
  switch (test) {
    case BsTest::BS1: return "bs1";
    case BsTest::BS2: return "bs2";
    case BsTest::BS3: return "bs3";
    case BsTest::BS4: return "bs4";
    case BsTest::BS5: return "bs5";
    case BsTest::BS6: return "bs6";
    case BsTest::BS7: return "bs7";
  }
  throw std::invalid_argument("unknown BS test id " + std::to_string(static_cast<int>(test)));
}

BsTest parse_test(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (BsTest t : kAllTests)
    if (test_name(t) == lower) return t;
  throw std::invalid_argument("unknown BS test '" + std::string(name) + "'");
}

std::uint64_t bytes_per_element(BsTest test) {
  switch (test) {
    case BsTest::BS1: return 16;
    case BsTest::BS2: return 24;
    case BsTest::BS3: return 8;
    case BsTest::BS4: return 16;
    case BsTest::BS5: return 48;
    case BsTest::BS6:
    case BsTest::BS7:
      throw std::invalid_argument(std::string(test_name(test)) + " is sized by a mesh, not a vector length");
  }
  throw std::invalid_argument("unknown BS test id " + std::to_string(static_cast<int>(test)));
}

std::uint64_t bytes_moved(BsTest test, std::int64_t n, std::optional<DofCounts> dofs) {
  if (!is_mesh_test(test)) {
    if (n < 0) throw std::invalid_argument("bytes_moved: negative element count");
    return bytes_per_element(test) * static_cast<std::uint64_t>(n);
  }
  if (!dofs) throw std::invalid_argument(std::string(test_name(test)) + " byte count needs NL and NG");
  if (dofs->nl < 0 || dofs->ng < 0) throw std::invalid_argument("bytes_moved: negative dof count");
  const auto nl = static_cast<std::uint64_t>(dofs->nl);
  const auto ng = static_cast<std::uint64_t>(dofs->ng);
  if (test == BsTest::BS6)
    return 8 * nl + 4 * nl + 8 * ng + 4 * (ng + 1);  // q, colIds, gatherq, rowStarts
  return 4 * nl + 8 * ng + 8 * nl;                   // scatterIds, gatherq, q
}

}  // namespace streambench

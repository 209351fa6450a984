#include <stdexcept>

#include "doctest.h"
#include "streambench/core.hpp"

using namespace streambench;

TEST_CASE("bytes_moved follows the per-test accounting") {
  CHECK(bytes_moved(BsTest::BS1, 1000) == 16000);
  CHECK(bytes_moved(BsTest::BS2, 1000) == 24000);
  CHECK(bytes_moved(BsTest::BS3, 1000) == 8000);
  CHECK(bytes_moved(BsTest::BS4, 1000) == 16000);
  CHECK(bytes_moved(BsTest::BS5, 1000) == 48000);
  // K=2, p=1: NL = 64, NG = 27.
  CHECK(bytes_moved(BsTest::BS6, 0, DofCounts{64, 27}) == 64 * 12 + 27 * 8 + 28 * 4);
  CHECK(bytes_moved(BsTest::BS6, 0, DofCounts{64, 27}) == 1096);
  CHECK(bytes_moved(BsTest::BS7, 0, DofCounts{64, 27}) == 4 * 64 + 8 * 27 + 8 * 64);
}

TEST_CASE("bytes_moved is linear and positive for vector tests") {
  for (BsTest t : {BsTest::BS1, BsTest::BS2, BsTest::BS3, BsTest::BS4, BsTest::BS5}) {
    for (std::int64_t n : {1, 7, 1000, 123457}) {
      CHECK(bytes_moved(t, 2 * n) == 2 * bytes_moved(t, n));
      CHECK(bytes_moved(t, n) > 0);
    }
  }
}

TEST_CASE("bytes_moved error paths") {
  CHECK_THROWS_AS(bytes_moved(BsTest::BS6, 10), std::invalid_argument);
  CHECK_THROWS_AS(bytes_moved(BsTest::BS7, 10), std::invalid_argument);
  CHECK_THROWS_AS(bytes_moved(BsTest::BS1, -1), std::invalid_argument);
  CHECK_THROWS_AS(bytes_moved(static_cast<BsTest>(42), 10), std::invalid_argument);
}

TEST_CASE("test names round trip") {
  for (BsTest t : kAllTests) CHECK(parse_test(test_name(t)) == t);
  CHECK(parse_test("BS4") == BsTest::BS4);
  CHECK_THROWS_AS(parse_test("bs8"), std::invalid_argument);
  CHECK_THROWS_AS(parse_test(""), std::invalid_argument);
}

#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace streambench::selftest {

struct Context {
  /// Corrupt one kernel output before it is checked (exercises the failure path).
  bool inject_fault = false;
};

struct Check {
  std::string name;
  /// Returns true on success; writes a short explanation into `detail`.
  std::function<bool(const Context&, std::string& detail)> run;
};

const std::vector<Check>& checks();

struct Summary {
  int passed = 0;
  int failed = 0;
};

/// Runs every check whose name contains `filter`, one report line each.
Summary run(std::ostream& os, const Context& ctx, const std::string& filter = {});

}  // namespace streambench::selftest

// Verification battery: every criterion runs at its pinned tolerance and
// prints one PASS/FAIL line. The same battery backs the CLI `suite` command.

#include <cstdio>

#include "doctest.h"
#include "mhess/report.hpp"

TEST_CASE("acceptance battery") {
  auto results = mhess::run_acceptance_battery(7);
  REQUIRE(results.size() == 13);
  for (const auto& c : results) {
    std::printf("%s  criterion %2d: %s  [%.0f ms]\n", c.pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), c.wall_ms);
    for (const auto& line : c.lines) std::printf("      %s\n", line.c_str());
    CHECK_MESSAGE(c.pass, "criterion ", c.id, " (", c.name, ")");
  }
}

// Acceptance suite: one pass/fail line per criterion, exact arithmetic, zero
// tolerance. Run directly or through ctest.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gsd/suite.hpp"

#include <cstdio>

TEST_CASE("acceptance criteria") {
    gsd::suite::Options opts;
    opts.seed = 7;
    auto results = gsd::suite::run_acceptance(opts);
    std::fputs(gsd::suite::format_results(results).c_str(), stdout);
    for (const auto& r : results) {
        INFO("criterion ", r.id, ": ", r.name, " — ", r.detail);
        CHECK(r.pass);
    }
}

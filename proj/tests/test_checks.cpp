#include <doctest.h>

#include <set>
#include <sstream>

#include "wegan/checks.hpp"

using namespace wegan;

TEST_CASE("check suite passes on a clean build") {
    const CheckReport report = run_checks();
    CHECK(report.results.size() == 7);
    for (const auto& r : report.results) {
        INFO(r.name << ": " << r.detail);
        CHECK(r.passed);
    }
    CHECK(report.all_passed());
}

TEST_CASE("check names and seeds are deterministic") {
    const CheckReport a = run_checks();
    const CheckReport b = run_checks();
    std::set<std::string> names;
    for (std::size_t i = 0; i < a.results.size(); ++i) {
        CHECK(a.results[i].name == b.results[i].name);
        CHECK(a.results[i].seed == b.results[i].seed);
        CHECK(a.results[i].detail == b.results[i].detail);
        names.insert(a.results[i].name);
    }
    CHECK(names.size() == a.results.size());
    std::ostringstream os;
    print_report(os, a);
    CHECK(os.str().find("PASS theorem1_sweep (seed 1001)") != std::string::npos);
}

TEST_CASE("corrupted weight normalization is caught") {
    const CheckReport report = run_checks(CheckOptions{true});
    CHECK_FALSE(report.all_passed());
    bool simplex_failed = false;
    for (const auto& r : report.results)
        if (r.name == "weight_simplex" || r.name == "theorem1_sweep") simplex_failed |= !r.passed;
    CHECK(simplex_failed);
}

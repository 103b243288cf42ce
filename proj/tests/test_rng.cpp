#include <doctest.h>

#include <cmath>
#include <set>

#include "wegan/rng.hpp"

using wegan::RngStream;

TEST_CASE("splitmix64 matches the reference sequence for seed 0") {
    // First outputs of the public-domain reference implementation.
    std::uint64_t state = 0;
    CHECK(wegan::splitmix64(state) == 0xE220A8397B1DCDAFULL);
    CHECK(wegan::splitmix64(state) == 0x6E789E6AA1B965F4ULL);
}

TEST_CASE("same seed gives identical draws") {
    RngStream a(42), b(42);
    for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());
    for (int i = 0; i < 1000; ++i) REQUIRE(a.normal() == b.normal());
}

TEST_CASE("child streams are distinct and do not consume parent draws") {
    RngStream root(7);
    const RngStream before = root;
    RngStream c1 = root.child("real");
    RngStream c2 = root.child("noise");
    RngStream c3 = root.child("epoch", 3);
    RngStream c4 = root.child("epoch", 4);
    CHECK(root == before);
    std::set<std::uint64_t> firsts{c1.next_u64(), c2.next_u64(), c3.next_u64(), c4.next_u64(), root.next_u64()};
    CHECK(firsts.size() == 5);
    CHECK(root.child("real").next_u64() == RngStream(7).child("real").next_u64());
}

TEST_CASE("uniform stays in [0,1) and below() in range") {
    RngStream r(3);
    for (int i = 0; i < 10000; ++i) {
        const double u = r.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        REQUIRE(r.below(8) < 8);
    }
}

TEST_CASE("normal variates have unit moments") {
    RngStream r(11);
    const int n = 200000;
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
        const double z = r.normal();
        REQUIRE(std::isfinite(z));
        s += z;
        s2 += z * z;
    }
    CHECK(std::abs(s / n) < 0.01);
    CHECK(std::abs(s2 / n - 1.0) < 0.02);
}

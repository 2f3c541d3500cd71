#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "tandem/full_info.hpp"
#include "tandem/property_checks.hpp"
#include "tandem/rng.hpp"

using namespace tandem;
using Catch::Matchers::WithinAbs;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("w_full matches the padding schedule", "[full-info]") {
    const FIConfig cfg(65536, 1.0);
    REQUIRE_THAT(w_full(65536, cfg), WithinAbs(0.20813865278942442, 1e-12));
    REQUIRE_THAT(w_full(1, cfg), WithinAbs(53.28349511409265, 1e-10));

    const FIConfig half(65536, 0.5);
    for (long long t : {1LL, 7LL, 100LL, 65536LL})
        REQUIRE(w_full(t, half) == 0.5 * w_full(t, cfg));

    REQUIRE_THROWS_AS(w_full(0, cfg), std::out_of_range);
    REQUIRE_THROWS_AS(w_full(65537, cfg), std::out_of_range);
}

TEST_CASE("dynamic interface sweeps each dyadic block", "[full-info]") {
    REQUIRE_THAT(dynamic_theta(4), WithinAbs(pi / 3.0, 1e-15));
    REQUIRE_THAT(dynamic_theta(6), WithinAbs(2.0 * pi / 3.0, 1e-15));
    REQUIRE_THAT(dynamic_theta(7), WithinAbs(5.0 * pi / 6.0, 1e-15));
    REQUIRE_THAT(dynamic_theta(1), WithinAbs(pi / 3.0, 1e-15));
    for (long long t = 1; t <= 16384; ++t) {
        const double theta = dynamic_theta(t);
        REQUIRE(theta >= pi / 3.0);
        REQUIRE(theta < pi);
    }
    REQUIRE_THROWS_AS(dynamic_theta(0), std::out_of_range);
}

TEST_CASE("classify_fi reproduces the worked cases", "[full-info]") {
    const FIConfig cfg(65536, 1.0);
    const double w = w_full(65536, cfg);  // 0.2081

    // theta = 0 sits in the B'' sector for any interface
    REQUIRE(classify_fi_sub_w(CubePoint{{0.4, 0.7, 0.4}}, pi / 2.0, w) ==
            FISubRegion::Bpp);
    REQUIRE(classify_fi(CubePoint{{0.4, 0.7, 0.4}}, 65536, pi / 2.0, cfg) == FIRegion::B);

    // theta = 2pi/3, r = sqrt(6)/10: side of the interface decides B' vs C'
    const CubePoint q{{0.4, 0.4, 0.7}};
    REQUIRE(classify_fi_sub_w(q, pi / 2.0, w) == FISubRegion::Cp);
    REQUIRE(classify_fi(q, 65536, pi / 2.0, cfg) == FIRegion::C);
    REQUIRE(classify_fi_sub_w(q, 5.0 * pi / 6.0, w) == FISubRegion::Bp);
    REQUIRE(classify_fi(q, 65536, 5.0 * pi / 6.0, cfg) == FIRegion::B);

    // theta = 4pi/3 lands in C''
    REQUIRE(classify_fi_sub_w(CubePoint{{0.7, 0.4, 0.4}}, pi / 2.0, w) ==
            FISubRegion::Cpp);

    // far side of the interface with enough clearance: A and D
    const CubePoint in_a = from_cylindrical({0.5, 0.45, pi / 2.0});
    REQUIRE(classify_fi_sub_w(in_a, 2.8, w) == FISubRegion::A);
    const CubePoint in_d = from_cylindrical({0.5, 0.45, 2.7});
    REQUIRE(classify_fi_sub_w(in_d, 1.2, w) == FISubRegion::D);
}

TEST_CASE("classification is invariant in the mean level", "[full-info][property]") {
    RandomStream rng(41);
    for (int i = 0; i < 5000; ++i) {
        const double r = rng.uniform(0.0, 0.6);
        const double theta = rng.uniform(0.0, two_pi);
        const double iface = rng.uniform(pi / 3.0, pi);
        const double w = rng.uniform(0.01, 0.5);
        const CubePoint lo = from_cylindrical({rng.uniform(0.2, 0.4), r, theta});
        const CubePoint hi = from_cylindrical({rng.uniform(0.5, 0.8), r, theta});
        REQUIRE(classify_fi_w(lo, iface, w) == classify_fi_w(hi, iface, w));
    }
}

TEST_CASE("coloring map and safety", "[full-info]") {
    REQUIRE(color_fi(FIRegion::A).arm_a == 2);
    REQUIRE(color_fi(FIRegion::A).arm_b == 1);
    REQUIRE(color_fi(FIRegion::B).arm_a == 3);
    REQUIRE(color_fi(FIRegion::B).arm_b == 1);
    REQUIRE(color_fi(FIRegion::C).arm_a == 3);
    REQUIRE(color_fi(FIRegion::C).arm_b == 2);
    REQUIRE(color_fi(FIRegion::D).arm_a == 1);
    REQUIRE(color_fi(FIRegion::D).arm_b == 2);

    RandomStream rng(0);
    REQUIRE(checks::fi_coloring_safety(rng).failed == 0);
}

TEST_CASE("partition totality on random draws", "[full-info][property]") {
    RandomStream rng(43);
    REQUIRE(checks::fi_partition_totality(rng, 100000).failed == 0);
}

TEST_CASE("non-neighboring regions stay w apart", "[full-info][property]") {
    RandomStream rng(47);
    REQUIRE(checks::fi_separation(rng, 20000).failed == 0);
}

TEST_CASE("dynamic counting bound at a small horizon", "[full-info][property]") {
    RandomStream rng(0);
    REQUIRE(checks::dynamic_counting_bound(rng, 1024, 1.0).failed == 0);
    REQUIRE(checks::dynamic_counting_bound(rng, 1024, 0.25).failed == 0);
}

TEST_CASE("perfect estimates never collide", "[full-info][property]") {
    RandomStream rng(53);
    for (int i = 0; i < 20000; ++i) {
        const CubePoint p = checks::random_cube_point(rng);
        const double iface = rng.uniform(pi / 3.0, pi);
        const double w = rng.uniform(0.005, 1.0);
        const JointAction arms = color_fi(classify_fi_w(p, iface, w));
        REQUIRE(arms.arm_a != arms.arm_b);
    }
}

TEST_CASE("fi_act plays own coordinate of the region color", "[full-info]") {
    const FIConfig cfg(65536, 1.0);

    // fresh players: q = 0 has theta = 0, lands in B'' -> (3, 1)
    FIPlayer alice(PlayerRole::Alice, cfg, pi / 2.0);
    FIPlayer bob(PlayerRole::Bob, cfg, pi / 2.0);
    REQUIRE(alice.act(1) == 3);
    REQUIRE(bob.act(1) == 1);

    // drive both means to (0.4, 0.4, 0.7): C region under iface pi/2 at t=T
    for (int i = 0; i < 4; ++i) {
        alice.observe({1, 1, 1});
        bob.observe({1, 1, 1});
    }
    for (int i = 0; i < 3; ++i) {
        alice.observe({0, 0, 1});
        bob.observe({0, 0, 1});
    }
    for (int i = 0; i < 3; ++i) {
        alice.observe({0, 0, 0});
        bob.observe({0, 0, 0});
    }
    const CubePoint q = alice.mean();
    REQUIRE_THAT(q[0], WithinAbs(0.4, 1e-12));
    REQUIRE_THAT(q[2], WithinAbs(0.7, 1e-12));
    REQUIRE(alice.act(65536) == 3);
    REQUIRE(bob.act(65536) == 2);
}

TEST_CASE("A-region and D-region actions", "[full-info]") {
    const double w = 0.05;
    const CubePoint in_a = from_cylindrical({0.5, 0.45, pi / 2.0});
    REQUIRE(own_arm(color_fi(classify_fi_w(in_a, 2.8, w)), PlayerRole::Alice) == 2);
    const CubePoint in_d = from_cylindrical({0.5, 0.45, 2.7});
    REQUIRE(own_arm(color_fi(classify_fi_w(in_d, 1.2, w)), PlayerRole::Bob) == 2);
}

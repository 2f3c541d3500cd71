#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <set>

#include "tandem/bandit_partition.hpp"
#include "tandem/property_checks.hpp"
#include "tandem/rng.hpp"

using namespace tandem;
using Catch::Matchers::WithinAbs;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("w_bandit matches the padding schedule", "[bandit]") {
    const BanditConfig cfg(65536, 1.0);
    REQUIRE_THAT(w_bandit(65536, cfg), WithinAbs(426.2679609127412, 1e-9));

    const BanditConfig tiny(65536, 1.0 / 32768.0);
    REQUIRE_THAT(w_bandit(65536, tiny), WithinAbs(0.013008665799339025, 1e-12));

    // scale 16 * 2^-15 reproduces the full-information widths exactly
    const BanditConfig as_full(65536, 16.0 / 32768.0);
    const FIConfig full(65536, 1.0);
    for (long long t : {1LL, 5LL, 1000LL, 65536LL})
        REQUIRE(w_bandit(t, as_full) == w_full(t, full));

    REQUIRE_THROWS_AS(w_bandit(0, cfg), std::out_of_range);
    REQUIRE_THROWS_AS(BanditConfig(3, 1.0), std::invalid_argument);
}

TEST_CASE("classify_bandit reproduces the worked cases", "[bandit]") {
    // axis: distance 0 to every half-plane
    REQUIRE(classify_bandit_w(CubePoint{{0.5, 0.5, 0.5}}, pi / 2.0, 0.1) == BRegion::H);

    const CubePoint q = from_cylindrical({0.5, 0.4, 5.0 * pi / 6.0});
    REQUIRE(classify_bandit_w(q, pi / 2.0, 0.1) == BRegion::K);
    REQUIRE(classify_bandit_w(q, pi / 2.0, 0.5) == BRegion::J);

    const CubePoint g = from_cylindrical({0.5, 0.4, 0.0});
    REQUIRE(classify_bandit_w(g, pi / 2.0, 0.1) == BRegion::G);
    REQUIRE(classify_bandit_w(g, pi / 3.0, 0.1) == BRegion::G);

    const CubePoint e = from_cylindrical({0.5, 0.4, 1.2});
    REQUIRE(classify_bandit_w(e, 2.0, 0.1) == BRegion::E);
    const CubePoint i = from_cylindrical({0.5, 0.4, 4.0});
    REQUIRE(classify_bandit_w(i, pi / 2.0, 0.1) == BRegion::I);
    const CubePoint f = from_cylindrical({0.5, 0.4, 1.06});
    REQUIRE(classify_bandit_w(f, 2.0, 0.015) == BRegion::F);
}

TEST_CASE("play table cells and structure", "[bandit]") {
    REQUIRE(table_lookup(BRegion::H, 2, PlayerRole::Alice) == 3);
    REQUIRE(table_lookup(BRegion::H, 2, PlayerRole::Bob) == 2);
    REQUIRE(table_lookup(BRegion::E, 3, PlayerRole::Alice) == 1);
    REQUIRE(table_lookup(BRegion::E, 3, PlayerRole::Bob) == 2);
    REQUIRE(table_lookup(BRegion::K, 1, PlayerRole::Bob) == 2);
    REQUIRE(table_lookup(BRegion::F, 1, PlayerRole::Alice) == 2);
    REQUIRE(table_lookup(BRegion::F, 4, PlayerRole::Bob) == 3);
    REQUIRE_THROWS_AS(table_lookup(BRegion::E, 0, PlayerRole::Alice), std::out_of_range);
    REQUIRE_THROWS_AS(table_lookup(BRegion::E, 5, PlayerRole::Alice), std::out_of_range);

    for (BRegion reg : kAllBRegions) {
        std::set<int> arms_a, arms_b;
        for (int off = 1; off <= 4; ++off) {
            const int a = table_lookup(reg, off, PlayerRole::Alice);
            const int b = table_lookup(reg, off, PlayerRole::Bob);
            REQUIRE(a != b);  // no cell collides
            arms_a.insert(a);
            arms_b.insert(b);
        }
        if (reg == BRegion::F || reg == BRegion::H || reg == BRegion::J) {
            // exploration rows show every arm to both players
            REQUIRE(arms_a.size() == 3);
            REQUIRE(arms_b.size() == 3);
        } else {
            // exploitation rows hold each player fixed within column pairs
            REQUIRE(table_lookup(reg, 1, PlayerRole::Alice) ==
                    table_lookup(reg, 2, PlayerRole::Alice));
            REQUIRE(table_lookup(reg, 3, PlayerRole::Alice) ==
                    table_lookup(reg, 4, PlayerRole::Alice));
            REQUIRE(table_lookup(reg, 1, PlayerRole::Bob) ==
                    table_lookup(reg, 2, PlayerRole::Bob));
            REQUIRE(table_lookup(reg, 3, PlayerRole::Bob) ==
                    table_lookup(reg, 4, PlayerRole::Bob));
        }
    }
}

TEST_CASE("update_estimate keeps running means per arm", "[bandit]") {
    ArmEstimates st;
    REQUIRE(st.mean()[1] == 0.0);  // convention before any pull

    st = update_estimate(st, 2, 1);
    st = update_estimate(st, 2, 0);
    st = update_estimate(st, 2, 1);
    REQUIRE(st.pulls[1] == 3);
    REQUIRE_THAT(st.mean()[1], WithinAbs(2.0 / 3.0, 1e-15));
    REQUIRE(st.pulls[0] == 0);
    REQUIRE(st.mean()[0] == 0.0);

    REQUIRE_THROWS_AS(update_estimate(st, 0, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(update_estimate(st, 2, 2), std::invalid_argument);
}

TEST_CASE("compatibility graph against the table", "[bandit]") {
    REQUIRE(compatible(BRegion::E, BRegion::F));
    REQUIRE(compatible(BRegion::E, BRegion::G));
    REQUIRE_FALSE(compatible(BRegion::E, BRegion::I));
    REQUIRE_FALSE(compatible(BRegion::E, BRegion::H));
    REQUIRE(compatible(BRegion::H, BRegion::H));
    REQUIRE(compatible(BRegion::F, BRegion::H));
    REQUIRE_FALSE(compatible(BRegion::F, BRegion::I));

    RandomStream rng(0);
    const PropertyReport rep = checks::compatibility_table(rng);
    REQUIRE(rep.checked == 49);
    REQUIRE(rep.failed == 0);
}

TEST_CASE("partition totality on random draws", "[bandit][property]") {
    RandomStream rng(59);
    REQUIRE(checks::bandit_partition_totality(rng, 100000).failed == 0);
}

TEST_CASE("incompatible regions stay w apart", "[bandit][property]") {
    RandomStream rng(61);
    REQUIRE(checks::bandit_separation(rng, 20000).failed == 0);
}

TEST_CASE("exploitation regions grow as the padding shrinks", "[bandit][property]") {
    RandomStream rng(67);
    long long confirmed = 0;
    while (confirmed < 2000) {
        const CubePoint q = checks::random_cube_point(rng);
        const double iface = rng.uniform(pi / 3.0, pi);
        const double w = rng.uniform(0.02, 0.5);
        const BRegion reg = classify_bandit_w(q, iface, w);
        if (reg != BRegion::E && reg != BRegion::G && reg != BRegion::I &&
            reg != BRegion::K)
            continue;
        // halving w corresponds to quadrupling t
        REQUIRE(classify_bandit_w(q, iface, w / 2.0) == reg);
        REQUIRE(classify_bandit_w(q, iface, w / 7.0) == reg);
        ++confirmed;
    }
}

TEST_CASE("perfect estimates never collide at any offset", "[bandit][property]") {
    RandomStream rng(71);
    for (int i = 0; i < 20000; ++i) {
        const CubePoint p = checks::random_cube_point(rng);
        const double iface = rng.uniform(pi / 3.0, pi);
        const double w = rng.uniform(0.005, 1.0);
        const BRegion reg = classify_bandit_w(p, iface, w);
        for (int off = 1; off <= 4; ++off)
            REQUIRE(table_lookup(reg, off, PlayerRole::Alice) !=
                    table_lookup(reg, off, PlayerRole::Bob));
    }
}

TEST_CASE("bandit_act freezes the region for each 4-round block", "[bandit]") {
    const BanditConfig cfg(65536, 1.0);
    BanditPlayer alice(PlayerRole::Alice, cfg, pi / 2.0);
    BanditPlayer bob(PlayerRole::Bob, cfg, pi / 2.0);

    // first block: zero estimates sit on the axis, which is in H
    REQUIRE(alice.act(1) == 3);
    REQUIRE(alice.block_region() == BRegion::H);
    REQUIRE(bob.act(1) == 1);
    alice.observe(3, 1);
    bob.observe(1, 0);
    REQUIRE(alice.act(2) == 3);
    REQUIRE(bob.act(2) == 2);
    alice.observe(3, 0);
    bob.observe(2, 1);
    REQUIRE(alice.act(3) == 1);
    REQUIRE(bob.act(3) == 3);
    REQUIRE(alice.act(4) == 2);
    REQUIRE(bob.act(4) == 3);

    // the region chosen at t=5 drives t=5..8 even though estimates move
    const int a5 = alice.act(5);
    const BRegion frozen = alice.block_region();
    REQUIRE(a5 == table_lookup(frozen, 1, PlayerRole::Alice));
    alice.observe(a5, 1);
    REQUIRE(alice.act(6) == table_lookup(frozen, 2, PlayerRole::Alice));
    alice.observe(table_lookup(frozen, 2, PlayerRole::Alice), 1);
    REQUIRE(alice.act(7) == table_lookup(frozen, 3, PlayerRole::Alice));
    alice.observe(table_lookup(frozen, 3, PlayerRole::Alice), 0);
    REQUIRE(alice.act(8) == table_lookup(frozen, 4, PlayerRole::Alice));
}

TEST_CASE("theta grid snapping", "[bandit]") {
    const long long T = 65536;
    RandomStream rng(73);
    for (int i = 0; i < 2000; ++i) {
        const double draw = rng.uniform(pi / 3.0, pi);
        const double snapped = snap_theta_to_grid(draw, T);
        const double k = snapped * static_cast<double>(T);
        REQUIRE_THAT(k, WithinAbs(std::round(k), 1e-6));
        REQUIRE(snapped >= pi / 3.0 - 1e-12);
        REQUIRE(snapped <= pi + 1e-12);
        REQUIRE(std::fabs(snapped - draw) <= 0.5 / static_cast<double>(T) + 1e-12);
        REQUIRE(snap_theta_to_grid(snapped, T) == snapped);
    }
}

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "tandem/explore_exploit.hpp"
#include "tandem/rng.hpp"

using namespace tandem;
using Catch::Matchers::WithinAbs;

TEST_CASE("exploration length rounds up to a multiple of six", "[baseline]") {
    const BaselineConfig bandit(65536, 0.2, 0.8, FeedbackModel::SharedBandit);
    REQUIRE(exploration_length(65536, bandit) == 7134);  // ceil(2^12.8) = 7132 -> 7134

    const BaselineConfig tiny(6, 0.2, 0.8, FeedbackModel::SharedBandit);
    REQUIRE(exploration_length(6, tiny) == 6);

    // full-info forces b = 1: with T divisible by 6 the whole game explores
    const BaselineConfig full(65532, 0.2, 0.8, FeedbackModel::IndependentFullInfo);
    REQUIRE(full.b == 1.0);
    REQUIRE(exploration_length(65532, full) == 65532);
}

TEST_CASE("baseline config validation", "[baseline]") {
    REQUIRE_THROWS_AS(BaselineConfig(65536, 0.0, 0.8, FeedbackModel::SharedBandit),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(BaselineConfig(65536, 1.0, 0.8, FeedbackModel::SharedBandit),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(BaselineConfig(65536, 0.2, 0.0, FeedbackModel::SharedBandit),
                      std::invalid_argument);
    REQUIRE_NOTHROW(BaselineConfig(65536, 0.2, 1.0, FeedbackModel::SharedBandit));
}

TEST_CASE("ambiguity threshold", "[baseline]") {
    REQUIRE_THAT(ambiguity_threshold(0.5, 65536, 0.2),
                 WithinAbs(0.05440941020600776, 1e-15));
    REQUIRE(ambiguity_threshold(0.0, 65536, 0.2) == 0.0);
    REQUIRE(ambiguity_threshold(1.0, 65536, 0.0) == 1.0);

    // both players read the same shared draw bitwise
    RandomStream s1(991), s2(991);
    const BaselineConfig cfg(65536, 0.2, 0.8, FeedbackModel::SharedBandit);
    REQUIRE(draw_threshold(65536, cfg, s1) == draw_threshold(65536, cfg, s2));
}

TEST_CASE("exploitation choice builds the ambiguity sets", "[baseline]") {
    // clear best: Alice takes it, Bob takes the runner-up
    REQUIRE(exploitation_choice(CubePoint{{0.1, 0.5, 0.9}}, PlayerRole::Alice, 0.05) == 1);
    REQUIRE(exploitation_choice(CubePoint{{0.1, 0.5, 0.9}}, PlayerRole::Bob, 0.05) == 2);

    // top two ambiguous, third clearly worse: min/max of the index pair
    REQUIRE(exploitation_choice(CubePoint{{0.1, 0.12, 0.9}}, PlayerRole::Bob, 0.05) == 2);
    REQUIRE(exploitation_choice(CubePoint{{0.1, 0.12, 0.9}}, PlayerRole::Alice, 0.05) ==
            1);

    // everything ambiguous: Alice 1, Bob 3
    REQUIRE(exploitation_choice(CubePoint{{0.5, 0.52, 0.54}}, PlayerRole::Bob, 0.05) == 3);
    REQUIRE(exploitation_choice(CubePoint{{0.5, 0.52, 0.54}}, PlayerRole::Alice, 0.05) ==
            1);

    // sorting ties break by arm index
    REQUIRE(exploitation_choice(CubePoint{{0.5, 0.5, 0.1}}, PlayerRole::Alice, 0.1) == 3);
    REQUIRE(exploitation_choice(CubePoint{{0.5, 0.5, 0.1}}, PlayerRole::Bob, 0.1) == 1);
}

TEST_CASE("offset round-robin never collides during exploration", "[baseline]") {
    const BaselineConfig cfg(65536, 0.2, 0.8, FeedbackModel::SharedBandit);
    BaselinePlayer alice(PlayerRole::Alice, cfg, 0.05);
    BaselinePlayer bob(PlayerRole::Bob, cfg, 0.05);
    for (long long t = 1; t <= alice.exploration_rounds(); ++t) {
        const int a = alice.act(t);
        const int b = bob.act(t);
        REQUIRE(a != b);
        alice.observe(a, 0);
        bob.observe(b, 0);
    }
}

TEST_CASE("each arm is explored equally often", "[baseline]") {
    const BaselineConfig cfg(65536, 0.2, 0.8, FeedbackModel::SharedBandit);
    BaselinePlayer bob(PlayerRole::Bob, cfg, 0.05);
    for (long long t = 1; t <= bob.exploration_rounds(); ++t) {
        const int b = bob.act(t);
        bob.observe(b, 0);
    }
    const long long per_arm = bob.exploration_rounds() / 3;
    for (int i = 0; i < 3; ++i) REQUIRE(bob.estimates().pulls[i] == per_arm);
}

TEST_CASE("the exploitation arm is constant after exploration", "[baseline]") {
    const BaselineConfig cfg(4096, 0.2, 0.8, FeedbackModel::SharedBandit);
    BaselinePlayer alice(PlayerRole::Alice, cfg, 0.02);
    RandomStream rng(313);
    const CubePoint p{{0.2, 0.6, 0.8}};
    long long explore_end = alice.exploration_rounds();
    int fixed_arm = 0;
    for (long long t = 1; t <= 4096; ++t) {
        const int arm = alice.act(t);
        if (t > explore_end) {
            if (fixed_arm == 0) {
                fixed_arm = arm;
                REQUIRE(alice.exploit_start() == t);
            }
            REQUIRE(arm == fixed_arm);
        }
        alice.observe(arm, rng.bernoulli(p[arm - 1]) ? 1 : 0);
    }
    REQUIRE(fixed_arm == 1);  // clear best under tau = 0.02
}

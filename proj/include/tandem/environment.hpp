#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

#include "tandem/geometry.hpp"
#include "tandem/rng.hpp"

namespace tandem {

// True mean losses. Validated to the unit cube at construction.
struct Instance {
    CubePoint p;

    Instance() = default;
    explicit Instance(const CubePoint& means) : p(means) {
        if (!in_unit_cube(p))
            throw std::invalid_argument("Instance: mean losses must lie in [0,1]^3");
    }

    double optimum() const { return pair_optimum(p); }
};

enum class FeedbackModel {
    SharedBandit,        // one shared loss sequence; own-arm bit, collisions force 1
    IndependentFullInfo  // two independent sequences; full vector every round
};

struct JointAction {
    int arm_a = 0;  // arms are 1-based, in {1,2,3}
    int arm_b = 0;
};

enum class PlayerRole { Alice, Bob };

inline int own_arm(const JointAction& j, PlayerRole role) {
    return role == PlayerRole::Alice ? j.arm_a : j.arm_b;
}

struct RoundOutcome {
    JointAction joint;
    bool collided = false;
    // SharedBandit feedback: one bit per player.
    std::uint8_t bit_a = 0;
    std::uint8_t bit_b = 0;
    // IndependentFullInfo feedback: one loss vector per player.
    std::array<std::uint8_t, 3> vec_a{0, 0, 0};
    std::array<std::uint8_t, 3> vec_b{0, 0, 0};
    double regret_increment = 0.0;    // pseudo-regret, from the means
    double realized_increment = 0.0;  // suffered losses minus the optimum
};

inline void check_arm(int arm) {
    if (arm < 1 || arm > 3) throw std::invalid_argument("arm index must be in {1,2,3}");
}

// Per-round pseudo-regret: 2*[collision] + [no collision]*(p_a + p_b) - p*.
// Deterministic in the means; nonnegative for any p in the cube.
inline double pseudo_regret_increment(const Instance& inst, const JointAction& joint) {
    check_arm(joint.arm_a);
    check_arm(joint.arm_b);
    if (joint.arm_a == joint.arm_b) return 2.0 - inst.optimum();
    return inst.p[joint.arm_a - 1] + inst.p[joint.arm_b - 1] - inst.optimum();
}

// Draw one round of losses and produce both players' feedback.
// SharedBandit draws a single loss vector shared by both players; a collision
// forces both feedback bits to 1 (the players cannot tell a collision from a
// genuine loss). IndependentFullInfo draws one vector per player and reveals
// it whole, regardless of collisions.
inline RoundOutcome step(const Instance& inst, FeedbackModel model,
                         const JointAction& joint, EpisodeStreams& streams) {
    check_arm(joint.arm_a);
    check_arm(joint.arm_b);
    RoundOutcome out;
    out.joint = joint;
    out.collided = joint.arm_a == joint.arm_b;
    out.regret_increment = pseudo_regret_increment(inst, joint);

    if (model == FeedbackModel::SharedBandit) {
        std::array<std::uint8_t, 3> loss{};
        for (int i = 0; i < 3; ++i)
            loss[i] = streams.loss.bernoulli(inst.p[i]) ? 1 : 0;
        if (out.collided) {
            out.bit_a = 1;
            out.bit_b = 1;
            out.realized_increment = 2.0 - inst.optimum();
        } else {
            out.bit_a = loss[joint.arm_a - 1];
            out.bit_b = loss[joint.arm_b - 1];
            out.realized_increment =
                out.bit_a + out.bit_b - inst.optimum();
        }
    } else {
        for (int i = 0; i < 3; ++i) {
            out.vec_a[i] = streams.loss_a.bernoulli(inst.p[i]) ? 1 : 0;
            out.vec_b[i] = streams.loss_b.bernoulli(inst.p[i]) ? 1 : 0;
        }
        if (out.collided) {
            out.realized_increment = 2.0 - inst.optimum();
        } else {
            out.realized_increment = out.vec_a[joint.arm_a - 1] +
                                     out.vec_b[joint.arm_b - 1] - inst.optimum();
        }
    }
    return out;
}

}  // namespace tandem

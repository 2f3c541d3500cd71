#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "tandem/bandit_partition.hpp"
#include "tandem/collision_strategy.hpp"
#include "tandem/environment.hpp"
#include "tandem/explore_exploit.hpp"
#include "tandem/full_info.hpp"
#include "tandem/instances.hpp"
#include "tandem/rng.hpp"

namespace tandem {

enum class StrategyKind {
    Partition,         // full-information partition, shared random Theta
    PartitionDynamic,  // full-information partition, deterministic interface
    BanditPartition,   // bandit partition with the 4-round play table
    Collision,         // deterministic collision-based strategy
    ExploreExploit     // randomized-threshold explore-then-exploit
};

inline std::string_view strategy_name(StrategyKind k) {
    switch (k) {
        case StrategyKind::Partition: return "partition";
        case StrategyKind::PartitionDynamic: return "partition-dynamic";
        case StrategyKind::BanditPartition: return "bandit-partition";
        case StrategyKind::Collision: return "collision";
        case StrategyKind::ExploreExploit: return "explore-exploit";
    }
    return "?";
}

inline std::optional<StrategyKind> parse_strategy(std::string_view s) {
    if (s == "partition") return StrategyKind::Partition;
    if (s == "partition-dynamic") return StrategyKind::PartitionDynamic;
    if (s == "bandit-partition") return StrategyKind::BanditPartition;
    if (s == "collision") return StrategyKind::Collision;
    if (s == "explore-exploit") return StrategyKind::ExploreExploit;
    return std::nullopt;
}

inline std::string_view model_name(FeedbackModel m) {
    return m == FeedbackModel::SharedBandit ? "bandit" : "full-info";
}

// The model a strategy is defined for; explore-exploit accepts both.
inline FeedbackModel default_model(StrategyKind k) {
    switch (k) {
        case StrategyKind::Partition:
        case StrategyKind::PartitionDynamic: return FeedbackModel::IndependentFullInfo;
        default: return FeedbackModel::SharedBandit;
    }
}

inline void validate_pairing(StrategyKind k, FeedbackModel m) {
    const bool full_info = m == FeedbackModel::IndependentFullInfo;
    switch (k) {
        case StrategyKind::Partition:
        case StrategyKind::PartitionDynamic:
            if (!full_info)
                throw std::invalid_argument(
                    "partition strategies require the full-info model");
            return;
        case StrategyKind::BanditPartition:
        case StrategyKind::Collision:
            if (full_info)
                throw std::invalid_argument(std::string(strategy_name(k)) +
                                            " requires the bandit model");
            return;
        case StrategyKind::ExploreExploit: return;
    }
}

// Per-strategy tuning knobs; only the fields relevant to the chosen strategy
// are read.
struct StrategyParams {
    double w_scale = 1.0;
    ThetaMode theta_mode = ThetaMode::Continuous;
    double c_init = 40.0;
    double c_fix = 10.0;
    double c_gap = 100.0;
    double c_window = 40.0;
    double a = 0.2;
    double b = 0.8;
};

struct EpisodeResult {
    std::string strategy;
    std::string model;
    long long horizon = 0;
    std::uint64_t seed = 0;  // per-episode derived seed
    std::uint64_t episode_index = 0;
    double theta = std::numeric_limits<double>::quiet_NaN();  // shared draw, if any
    CubePoint p;
    double pseudo_regret = 0.0;
    double realized_regret = 0.0;
    long long collision_count = 0;
    long long first_collision_t = -1;
    bool omega_violation = false;
    long long fixate_t = -1;   // player A's transition round (-1: none)
    long long restart_t = -1;  // player B's transition round (-1: none)

    bool has_theta() const { return !std::isnan(theta); }
};

namespace detail {

// Concentration events conditioning the no-collision guarantees. The
// full-information event bounds |q_t(i)-p_i| by w_t/4 for every t in [T];
// the bandit event bounds |q_t(i)-p_i| by w_(4n_t(i)+5)/32 as long as no
// collision has happened before t.
inline bool fi_omega_violated(const FIPlayer& player, const Instance& inst,
                              long long t, const FIConfig& cfg) {
    const CubePoint q = player.mean();
    const double radius = w_full(t, cfg) / 4.0;
    for (int i = 0; i < 3; ++i)
        if (std::fabs(q[i] - inst.p[i]) >= radius) return true;
    return false;
}

inline bool bandit_omega_violated(const BanditPlayer& player, const Instance& inst,
                                  const BanditConfig& cfg) {
    const ArmEstimates& est = player.estimates();
    const CubePoint q = est.mean();
    const double logT = std::log(static_cast<double>(cfg.horizon));
    for (int i = 0; i < 3; ++i) {
        const double idx = static_cast<double>(4 * est.pulls[i] + 5);
        const double radius = cfg.w_scale * 32768.0 * std::sqrt(logT / idx) / 32.0;
        if (std::fabs(q[i] - inst.p[i]) >= radius) return true;
    }
    return false;
}

}  // namespace detail

// Run one seeded episode. Deterministic in (strategy, params, instance,
// model, T, streams); the loop is the only place feedback crosses between
// the environment and the players.
inline EpisodeResult run_episode(StrategyKind kind, const StrategyParams& params,
                                 const Instance& inst, FeedbackModel model,
                                 long long T, std::uint64_t master_seed,
                                 std::uint64_t episode_index,
                                 EpisodeStreams& streams) {
    validate_pairing(kind, model);

    EpisodeResult res;
    res.strategy = std::string(strategy_name(kind));
    res.model = std::string(model_name(model));
    res.horizon = T;
    res.seed = derive_stream_seed(master_seed, episode_index, "episode");
    res.episode_index = episode_index;
    res.p = inst.p;

    // strategy construction, including any shared-randomness draws
    std::optional<FIConfig> fi_cfg;
    std::optional<FIPlayer> fi_a, fi_b;
    std::optional<BanditConfig> bandit_cfg;
    std::optional<BanditPlayer> bp_a, bp_b;
    std::optional<CollisionAlice> col_a;
    std::optional<CollisionBob> col_b;
    std::optional<BaselinePlayer> ee_a, ee_b;

    switch (kind) {
        case StrategyKind::Partition:
        case StrategyKind::PartitionDynamic: {
            const auto mode = kind == StrategyKind::Partition ? InterfaceMode::RandomTheta
                                                              : InterfaceMode::Dynamic;
            fi_cfg.emplace(T, params.w_scale, mode);
            double theta = 0.0;
            if (mode == InterfaceMode::RandomTheta) {
                theta = streams.shared.uniform(std::numbers::pi / 3.0, std::numbers::pi);
                res.theta = theta;
            }
            fi_a.emplace(PlayerRole::Alice, *fi_cfg, theta);
            fi_b.emplace(PlayerRole::Bob, *fi_cfg, theta);
            break;
        }
        case StrategyKind::BanditPartition: {
            bandit_cfg.emplace(T, params.w_scale, params.theta_mode);
            double theta =
                streams.shared.uniform(std::numbers::pi / 3.0, std::numbers::pi);
            if (params.theta_mode == ThetaMode::Grid)
                theta = snap_theta_to_grid(theta, T);
            res.theta = theta;
            bp_a.emplace(PlayerRole::Alice, *bandit_cfg, theta);
            bp_b.emplace(PlayerRole::Bob, *bandit_cfg, theta);
            break;
        }
        case StrategyKind::Collision: {
            CollisionConfig cfg(T, params.c_init, params.c_fix, params.c_gap,
                                params.c_window);
            col_a.emplace(cfg);
            col_b.emplace(cfg);
            break;
        }
        case StrategyKind::ExploreExploit: {
            BaselineConfig cfg(T, params.a, params.b, model);
            const double tau = draw_threshold(T, cfg, streams.shared);
            ee_a.emplace(PlayerRole::Alice, cfg, tau);
            ee_b.emplace(PlayerRole::Bob, cfg, tau);
            break;
        }
    }

    bool collided_yet = false;
    for (long long t = 1; t <= T; ++t) {
        // concentration-event check on the estimates entering round t
        if (!res.omega_violation) {
            if (fi_cfg) {
                res.omega_violation = detail::fi_omega_violated(*fi_a, inst, t, *fi_cfg) ||
                                      detail::fi_omega_violated(*fi_b, inst, t, *fi_cfg);
            } else if (bandit_cfg && !collided_yet) {
                res.omega_violation =
                    detail::bandit_omega_violated(*bp_a, inst, *bandit_cfg) ||
                    detail::bandit_omega_violated(*bp_b, inst, *bandit_cfg);
            }
        }

        JointAction joint;
        switch (kind) {
            case StrategyKind::Partition:
            case StrategyKind::PartitionDynamic:
                joint = {fi_a->act(t), fi_b->act(t)};
                break;
            case StrategyKind::BanditPartition:
                joint = {bp_a->act(t), bp_b->act(t)};
                if (res.fixate_t < 0 && bp_a->exploiting()) res.fixate_t = t;
                if (res.restart_t < 0 && bp_b->exploiting()) res.restart_t = t;
                break;
            case StrategyKind::Collision:
                joint = {col_a->act(t), col_b->act(t)};
                break;
            case StrategyKind::ExploreExploit:
                joint = {ee_a->act(t), ee_b->act(t)};
                break;
        }

        const RoundOutcome out = step(inst, model, joint, streams);
        res.pseudo_regret += out.regret_increment;
        res.realized_regret += out.realized_increment;
        if (out.collided) {
            ++res.collision_count;
            if (!collided_yet) res.first_collision_t = t;
            collided_yet = true;
        }

        switch (kind) {
            case StrategyKind::Partition:
            case StrategyKind::PartitionDynamic:
                fi_a->observe(out.vec_a);
                fi_b->observe(out.vec_b);
                break;
            case StrategyKind::BanditPartition:
                bp_a->observe(joint.arm_a, out.bit_a);
                bp_b->observe(joint.arm_b, out.bit_b);
                break;
            case StrategyKind::Collision:
                col_a->observe(joint.arm_a, out.bit_a);
                col_b->observe(joint.arm_b, out.bit_b);
                break;
            case StrategyKind::ExploreExploit:
                if (model == FeedbackModel::SharedBandit) {
                    ee_a->observe(joint.arm_a, out.bit_a);
                    ee_b->observe(joint.arm_b, out.bit_b);
                } else {
                    ee_a->observe_full(out.vec_a);
                    ee_b->observe_full(out.vec_b);
                }
                break;
        }
    }

    // transition rounds: fixate_t follows player A, restart_t player B
    switch (kind) {
        case StrategyKind::Collision:
            res.fixate_t = col_a->fixation_time();
            res.restart_t = col_b->transition_time();
            break;
        case StrategyKind::ExploreExploit:
            res.fixate_t = ee_a->exploit_start();
            res.restart_t = ee_b->exploit_start();
            break;
        default: break;  // bandit-partition sets them in the loop
    }
    return res;
}

}  // namespace tandem

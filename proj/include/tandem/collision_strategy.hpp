#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tandem/bandit_partition.hpp"
#include "tandem/environment.hpp"

namespace tandem {

// Deterministic strategy that tolerates a bounded burst of collisions as its
// only signalling channel. Alice occupies arm 3 during a long initialization
// and then hunts for the better of {1,2}; Bob alternates phase-wise over his
// valid arms and restarts onto a two-arm single-player policy once a long
// all-ones run reveals where Alice settled.
struct CollisionConfig {
    long long horizon = 0;
    double c_init = 40.0;    // initialization length scale
    double c_fix = 10.0;     // Alice's fixation gap scale
    double c_gap = 100.0;    // Bob's removal/commit gap scale
    double c_window = 40.0;  // all-ones detection window scale
    std::string single_player_policy = "lcb";

    CollisionConfig() = default;
    CollisionConfig(long long T, double init, double fix, double gap, double window)
        : horizon(T), c_init(init), c_fix(fix), c_gap(gap), c_window(window) {
        if (T < 1) throw std::invalid_argument("collision config: horizon must be >= 1");
        if (!(c_init > 0.0 && c_fix > 0.0 && c_gap > 0.0 && c_window > 0.0))
            throw std::invalid_argument("collision config: constants must be > 0");
    }

    double sqrt_t_log_t() const {
        const double T = static_cast<double>(horizon);
        return std::sqrt(T * std::log(T));
    }

    // Initialization length, rounded up to an even number so Bob's 1/2
    // alternation is balanced.
    long long init_length() const {
        auto t0 = static_cast<long long>(std::llround(c_init * sqrt_t_log_t()));
        if (t0 % 2 != 0) ++t0;
        if (t0 < 2) t0 = 2;
        return t0;
    }

    // Phases are [2^k+1, 2^(k+1)] for k >= k0, with 2^k0 the smallest power
    // of two >= t0. Rounds in (t0, 2^k0] keep the initialization schedule.
    int first_phase_exponent() const {
        const long long t0 = init_length();
        int k = 1;
        while ((1LL << k) < t0) ++k;
        return k;
    }

    // Watched-arm observations that must all be 1 to trigger a restart: half
    // the wall-clock window, since Bob alternates two arms within a phase.
    long long watched_window() const {
        return std::max<long long>(
            1, static_cast<long long>(std::ceil(c_window * sqrt_t_log_t() / 2.0)));
    }

    double fixation_threshold(long long t) const {
        const double dt = static_cast<double>(t - init_length());
        return c_fix * std::sqrt(std::log(static_cast<double>(horizon)) / dt);
    }

    double gap_threshold(long long t) const {
        return c_gap *
               std::sqrt(std::log(static_cast<double>(horizon)) / static_cast<double>(t));
    }

    double removal_threshold() const {
        const double T = static_cast<double>(horizon);
        return 1.0 - std::sqrt(std::log(T) / T);
    }
};

// Alice's fixation target once the gap test passes: the smaller empirical
// loss among arms 1 and 2, ties to arm 1.
inline int alice_fixation_choice(const CubePoint& q) {
    return q[0] <= q[1] ? 1 : 2;
}

// Joint schedule during initialization: Alice sits on 3, Bob alternates 1/2.
inline JointAction init_schedule(long long t, const CollisionConfig& cfg) {
    if (t < 1 || t > cfg.init_length())
        throw std::out_of_range("init_schedule: t outside the initialization window");
    return {3, t % 2 == 1 ? 1 : 2};
}

// Bob's valid arms once initialization ends: drop any of {1,2} whose
// empirical loss is within sqrt(log(T)/T) of 1. Arm 3 always stays.
inline std::set<int> valid_set_after_init(const CubePoint& q_b,
                                          const CollisionConfig& cfg) {
    std::set<int> valid{1, 2, 3};
    for (int arm : {1, 2})
        if (q_b[arm - 1] >= cfg.removal_threshold()) valid.erase(arm);
    return valid;
}

// Lower-confidence-bound policy over the arms that survive a restart.
// Indexes by q(i) - sqrt(2*log(horizon)/n(i)); unplayed arms first, ties to
// the lower arm index.
struct SinglePlayerLCB {
    long long horizon = 2;  // log argument for the confidence radius
    std::array<bool, 3> available{false, false, false};
    std::array<long long, 3> pulls{0, 0, 0};
    std::array<double, 3> sums{0.0, 0.0, 0.0};

    int act() const {
        int best = 0;
        double best_index = 0.0;
        const double logh =
            std::log(static_cast<double>(std::max<long long>(horizon, 2)));
        for (int arm = 1; arm <= 3; ++arm) {
            if (!available[arm - 1]) continue;
            if (pulls[arm - 1] == 0) return arm;
            const double mean = sums[arm - 1] / static_cast<double>(pulls[arm - 1]);
            const double index =
                mean - std::sqrt(2.0 * logh / static_cast<double>(pulls[arm - 1]));
            if (best == 0 || index < best_index) {
                best = arm;
                best_index = index;
            }
        }
        if (best == 0) throw std::logic_error("single-player policy: no available arm");
        return best;
    }

    void observe(int arm, std::uint8_t loss_bit) {
        ++pulls[arm - 1];
        sums[arm - 1] += loss_bit;
    }
};

// Alice: initialization, then phase-wise parity play on {1,2} until the gap
// test passes, after which she never moves again. The gap test needs data on
// both low arms, so it can fire from the second phase boundary on.
class CollisionAlice {
  public:
    explicit CollisionAlice(const CollisionConfig& cfg) : cfg_(cfg) {}

    int act(long long t) {
        if (t <= hold_end()) return 3;
        const auto [k, start] = phase_of(t);
        if (t == start) on_phase_start(k, t);
        if (fixated_arm_) return *fixated_arm_;
        return phase_parity_arm_;
    }

    void observe(int arm, std::uint8_t loss_bit) { estimates_.update(arm, loss_bit); }

    std::optional<int> fixated_arm() const { return fixated_arm_; }
    long long fixation_time() const { return fixation_time_; }
    const ArmEstimates& estimates() const { return estimates_; }

  private:
    long long hold_end() const { return 1LL << cfg_.first_phase_exponent(); }

    std::pair<int, long long> phase_of(long long t) const {
        int k = cfg_.first_phase_exponent();
        while ((1LL << (k + 1)) < t) ++k;
        return {k, (1LL << k) + 1};
    }

    void on_phase_start(int k, long long t) {
        if (fixated_arm_) return;
        const CubePoint q = estimates_.mean();
        const bool both_sampled = estimates_.pulls[0] > 0 && estimates_.pulls[1] > 0;
        if (both_sampled && std::fabs(q[0] - q[1]) >= cfg_.fixation_threshold(t)) {
            fixated_arm_ = alice_fixation_choice(q);
            fixation_time_ = t;
            return;
        }
        phase_parity_arm_ = k % 2 == 1 ? 1 : 2;
    }

    CollisionConfig cfg_;
    ArmEstimates estimates_;
    std::optional<int> fixated_arm_;
    long long fixation_time_ = -1;
    int phase_parity_arm_ = 1;
};

// Bob: initialization, arm validation, phase-wise alternation with the
// removal/commit tests at phase starts, the all-ones restart rule, and the
// post-restart single-player policy on the two arms Alice cannot hold.
class CollisionBob {
  public:
    explicit CollisionBob(const CollisionConfig& cfg) : cfg_(cfg) {}

    int act(long long t) {
        current_t_ = t;
        if (t > cfg_.init_length() && !valid_computed_) seal_init();
        if (t <= hold_end()) return t % 2 == 1 ? 1 : 2;
        if (restarted_) return restart_policy_.act();
        if (committed_to_3_) return 3;
        const auto [k, start] = phase_of(t);
        if (t == start) on_phase_start(k, t);
        if (committed_to_3_) return 3;
        const auto n = static_cast<long long>(rotation_.size());
        return rotation_[static_cast<std::size_t>(rotation_pos_ % n)];
    }

    void observe(int arm, std::uint8_t loss_bit) {
        if (restarted_) {
            restart_policy_.observe(arm, loss_bit);
            return;
        }
        estimates_.update(arm, loss_bit);
        if (committed_to_3_ || !in_phase_) return;
        ++rotation_pos_;
        if (arm == watched_arm_ && watch_alive_) {
            if (loss_bit == 1) {
                ++watched_ones_;
                if (watched_ones_ >= cfg_.watched_window()) trigger_restart(arm);
            } else {
                // a 0 breaks the run; rule can no longer fire this phase
                watch_alive_ = false;
            }
        }
    }

    const std::set<int>& valid_arms() const { return valid_arms_; }
    bool committed_to_3() const { return committed_to_3_; }
    bool restarted() const { return restarted_; }
    std::optional<int> excluded_arm() const { return excluded_arm_; }
    long long transition_time() const { return transition_time_; }
    const SinglePlayerLCB& restart_policy() const { return restart_policy_; }
    const ArmEstimates& estimates() const { return estimates_; }

  private:
    long long hold_end() const { return 1LL << cfg_.first_phase_exponent(); }

    std::pair<int, long long> phase_of(long long t) const {
        int k = cfg_.first_phase_exponent();
        while ((1LL << (k + 1)) < t) ++k;
        return {k, (1LL << k) + 1};
    }

    void seal_init() {
        valid_arms_ = valid_set_after_init(estimates_.mean(), cfg_);
        valid_computed_ = true;
    }

    void on_phase_start(int k, long long t) {
        in_phase_ = true;
        const CubePoint q = estimates_.mean();
        const double thr = cfg_.gap_threshold(t);

        // removal rule: only from the full set, and only once every arm has data
        if (valid_arms_ == std::set<int>{1, 2, 3} && estimates_.pulls[2] > 0 &&
            estimates_.pulls[0] > 0 && estimates_.pulls[1] > 0 &&
            q[2] - std::max(q[0], q[1]) >= thr) {
            valid_arms_.erase(3);
        }

        // commit rule: arm 3 clearly best among the remaining low candidates
        std::optional<double> low_candidate;
        for (int arm : {1, 2})
            if (valid_arms_.count(arm) != 0 && estimates_.pulls[arm - 1] > 0) {
                const double v = q[arm - 1];
                if (!low_candidate || v < *low_candidate) low_candidate = v;
            }
        if (valid_arms_.count(1) == 0 && valid_arms_.count(2) == 0) {
            commit(t);  // nothing but arm 3 left
            return;
        }
        if (estimates_.pulls[2] > 0 && low_candidate && q[2] - *low_candidate <= -thr) {
            commit(t);
            return;
        }

        // alternation set for this phase
        const int parity_arm = k % 2 == 1 ? 1 : 2;
        rotation_.clear();
        for (int arm : valid_arms_)
            if (arm != parity_arm) rotation_.push_back(arm);
        rotation_pos_ = 0;

        watched_arm_ = 3 - parity_arm;
        watched_ones_ = 0;
        watch_alive_ = true;
    }

    void commit(long long t) {
        committed_to_3_ = true;
        if (transition_time_ < 0) transition_time_ = t;
    }

    void trigger_restart(int watched) {
        restarted_ = true;
        excluded_arm_ = watched;
        if (transition_time_ < 0) transition_time_ = current_t_;
        restart_policy_ = SinglePlayerLCB{};
        restart_policy_.horizon = std::max<long long>(cfg_.horizon - current_t_, 2);
        for (int arm = 1; arm <= 3; ++arm)
            restart_policy_.available[arm - 1] = arm != watched;
    }

    CollisionConfig cfg_;
    ArmEstimates estimates_;
    std::set<int> valid_arms_{1, 2, 3};
    bool valid_computed_ = false;
    bool committed_to_3_ = false;
    bool restarted_ = false;
    std::optional<int> excluded_arm_;
    long long transition_time_ = -1;
    std::vector<int> rotation_{1, 2};
    long long rotation_pos_ = 0;
    int watched_arm_ = 0;
    long long watched_ones_ = 0;
    bool watch_alive_ = false;
    bool in_phase_ = false;
    long long current_t_ = 0;
    SinglePlayerLCB restart_policy_;
};

}  // namespace tandem

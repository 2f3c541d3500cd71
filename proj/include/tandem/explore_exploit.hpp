#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "tandem/bandit_partition.hpp"
#include "tandem/environment.hpp"
#include "tandem/rng.hpp"

namespace tandem {

// Explore-then-exploit with a randomized ambiguity threshold tau = U / T^a.
// On the full-information model the exploration exponent is forced to 1.
struct BaselineConfig {
    long long horizon = 0;
    double a = 0.2;  // threshold scale exponent
    double b = 0.8;  // exploration length exponent
    FeedbackModel model = FeedbackModel::SharedBandit;

    BaselineConfig() = default;
    BaselineConfig(long long T, double a_exp, double b_exp, FeedbackModel m)
        : horizon(T), a(a_exp), b(b_exp), model(m) {
        if (T < 1) throw std::invalid_argument("baseline config: horizon must be >= 1");
        if (!(a > 0.0 && a < 1.0))
            throw std::invalid_argument("baseline config: a must lie in (0,1)");
        if (m == FeedbackModel::IndependentFullInfo) b = 1.0;
        if (!(b > 0.0 && b <= 1.0))
            throw std::invalid_argument("baseline config: b must lie in (0,1]");
    }
};

// ceil(T^b), rounded up to a multiple of 6 so the offset round-robin shows
// each arm to each player equally often.
inline long long exploration_length(long long T, const BaselineConfig& cfg) {
    const auto raw = static_cast<long long>(
        std::ceil(std::pow(static_cast<double>(T), cfg.b)));
    return (raw + 5) / 6 * 6;
}

inline double ambiguity_threshold(double u, long long T, double a) {
    return u / std::pow(static_cast<double>(T), a);
}

// tau = U / T^a with U uniform on [0,1] from the shared stream; both players
// call this on the same stream state and therefore see the same value.
inline double draw_threshold(long long T, const BaselineConfig& cfg,
                             RandomStream& shared) {
    return ambiguity_threshold(shared.uniform(), T, cfg.a);
}

// Exploitation arm from own estimates: order arms by estimated loss (ties by
// index), build the ambiguity set, then Alice takes its smallest arm index
// and Bob its largest.
inline int exploitation_choice(const CubePoint& q, PlayerRole role, double tau) {
    std::array<int, 3> order{1, 2, 3};
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        if (q[x - 1] != q[y - 1]) return q[x - 1] < q[y - 1];
        return x < y;
    });
    const double q1 = q[order[0] - 1], q2 = q[order[1] - 1], q3 = q[order[2] - 1];

    std::array<int, 3> candidate_set{};
    int set_size = 0;
    if (q1 <= q2 - tau) {
        // clear best: Alice aims at it, Bob at the runner-up
        candidate_set[0] = role == PlayerRole::Alice ? order[0] : order[1];
        set_size = 1;
    } else if (q2 <= q3 - tau) {
        candidate_set[0] = order[0];
        candidate_set[1] = order[1];
        set_size = 2;
    } else {
        candidate_set = {1, 2, 3};
        set_size = 3;
    }

    if (role == PlayerRole::Alice)
        return *std::min_element(candidate_set.begin(), candidate_set.begin() + set_size);
    return *std::max_element(candidate_set.begin(), candidate_set.begin() + set_size);
}

// One explore-exploit player. During exploration Alice cycles 1,2,3 and Bob
// cycles 2,3,1 (never colliding); the exploitation arm is fixed once.
class BaselinePlayer {
  public:
    BaselinePlayer(PlayerRole role, const BaselineConfig& cfg, double tau)
        : role_(role), cfg_(cfg), tau_(tau),
          explore_len_(exploration_length(cfg.horizon, cfg)) {}

    int act(long long t) {
        if (t <= explore_len_) return roundrobin_arm(t);
        if (!exploit_arm_) {
            exploit_arm_ = exploitation_choice(estimates_.mean(), role_, tau_);
            exploit_start_ = t;
        }
        return *exploit_arm_;
    }

    void observe(int arm, std::uint8_t loss_bit) { estimates_.update(arm, loss_bit); }

    void observe_full(const std::array<std::uint8_t, 3>& losses) {
        for (int i = 1; i <= 3; ++i) estimates_.update(i, losses[i - 1]);
    }

    long long exploration_rounds() const { return explore_len_; }
    long long exploit_start() const { return exploit_start_; }
    const ArmEstimates& estimates() const { return estimates_; }

  private:
    int roundrobin_arm(long long t) const {
        const int base = static_cast<int>((t - 1) % 3);
        const int offset = role_ == PlayerRole::Alice ? 0 : 1;
        return (base + offset) % 3 + 1;
    }

    PlayerRole role_;
    BaselineConfig cfg_;
    double tau_;
    long long explore_len_;
    std::optional<int> exploit_arm_;
    long long exploit_start_ = -1;
    ArmEstimates estimates_;
};

}  // namespace tandem

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include "tandem/environment.hpp"
#include "tandem/geometry.hpp"

namespace tandem {

enum class BRegion { E, F, G, H, I, J, K };

inline constexpr std::array<BRegion, 7> kAllBRegions{BRegion::E, BRegion::F, BRegion::G,
                                                     BRegion::H, BRegion::I, BRegion::J,
                                                     BRegion::K};

inline constexpr char bregion_name(BRegion r) {
    return "EFGHIJK"[static_cast<int>(r)];
}

enum class ThetaMode {
    Continuous,  // Theta uniform on [pi/3, pi]
    Grid         // rounded to the nearest multiple of 1/T inside [pi/3, pi]
};

struct BanditConfig {
    long long horizon = 0;
    double w_scale = 1.0;  // multiplier on the 2^15*sqrt(log(T)/t) width
    ThetaMode theta_mode = ThetaMode::Continuous;

    BanditConfig() = default;
    BanditConfig(long long T, double scale, ThetaMode mode = ThetaMode::Continuous)
        : horizon(T), w_scale(scale), theta_mode(mode) {
        if (T < 4) throw std::invalid_argument("bandit config: horizon must be >= 4");
        if (!(scale > 0.0))
            throw std::invalid_argument("bandit config: w_scale must be > 0");
    }
};

inline double w_bandit(long long t, const BanditConfig& cfg) {
    if (t < 1 || t > cfg.horizon) throw std::out_of_range("w_bandit: t outside [1, T]");
    return cfg.w_scale * 32768.0 *
           std::sqrt(std::log(static_cast<double>(cfg.horizon)) / static_cast<double>(t));
}

// Snap a draw to the nearest multiple of 1/T inside [pi/3, pi].
inline double snap_theta_to_grid(double theta, long long T) {
    const double step = 1.0 / static_cast<double>(T);
    double snapped = std::round(theta / step) * step;
    const double lo = std::ceil(std::numbers::pi / 3.0 / step) * step;
    const double hi = std::floor(std::numbers::pi / step) * step;
    if (snapped < lo) snapped = lo;
    if (snapped > hi) snapped = hi;
    return snapped;
}

// Membership predicate for one region at explicit width w. E, G, H, I, K are
// the stated distance/sector tests; F and J are the sector remainders, which
// makes the seven regions a partition by construction.
inline bool bandit_predicate(BRegion reg, const CylPoint& c, double interface_theta,
                             double w) {
    constexpr double pi = std::numbers::pi;
    const double theta = c.theta;
    const HalfPlane interface{interface_theta};
    const auto in_E = [&] {
        return theta >= pi / 3.0 && theta < interface_theta &&
               dist_to_halfplane(c, kQ1) >= w / 2.0 &&
               dist_to_halfplane(c, interface) >= 1.5 * w;
    };
    const auto in_G = [&] {
        return (theta < pi / 3.0 || theta >= 5.0 * pi / 3.0) &&
               dist_to_halfplane(c, kQ1) >= w / 2.0 &&
               dist_to_halfplane(c, kQ3) >= w / 2.0;
    };
    const auto in_H = [&] {
        const std::array<HalfPlane, 2> u{interface, kQ3};
        return dist_to_halfplane_union(c, u) < w / 2.0;
    };
    const auto in_I = [&] {
        return theta >= pi && theta < 5.0 * pi / 3.0 &&
               dist_to_halfplane(c, kQ2) >= w / 2.0 &&
               dist_to_halfplane(c, kQ3) >= w / 2.0;
    };
    const auto in_K = [&] {
        return theta >= interface_theta && theta < pi &&
               dist_to_halfplane(c, kQ2) >= w / 2.0 &&
               dist_to_halfplane(c, interface) >= 1.5 * w;
    };
    switch (reg) {
        case BRegion::E: return in_E();
        case BRegion::G: return in_G();
        case BRegion::H: return in_H();
        case BRegion::I: return in_I();
        case BRegion::K: return in_K();
        case BRegion::F:
            return (theta < interface_theta || theta >= 5.0 * pi / 3.0) && !in_E() &&
                   !in_G() && !in_H();
        case BRegion::J:
            return theta >= interface_theta && theta < 5.0 * pi / 3.0 && !in_H() &&
                   !in_I() && !in_K();
    }
    return false;
}

inline BRegion classify_bandit_w(const CubePoint& q, double interface_theta, double w) {
    const CylPoint c = to_cylindrical(q);
    for (BRegion reg :
         {BRegion::E, BRegion::G, BRegion::H, BRegion::I, BRegion::K})
        if (bandit_predicate(reg, c, interface_theta, w)) return reg;
    if (c.theta < interface_theta || c.theta >= 5.0 * std::numbers::pi / 3.0)
        return BRegion::F;
    return BRegion::J;
}

inline BRegion classify_bandit(const CubePoint& q, long long t, double interface_theta,
                               const BanditConfig& cfg) {
    return classify_bandit_w(q, interface_theta, w_bandit(t, cfg));
}

// Arms played at block offsets 4t+1..4t+4 per region; the last two columns
// swap the players' roles so both explore every arm in F/H/J.
struct PlayTable {
    // [region][offset-1] -> joint action
    std::array<std::array<JointAction, 4>, 7> cells;
};

inline const PlayTable& play_table() {
    static const PlayTable table{{{
        {{{2, 1}, {2, 1}, {1, 2}, {1, 2}}},  // E
        {{{2, 1}, {3, 1}, {1, 2}, {1, 3}}},  // F
        {{{3, 1}, {3, 1}, {1, 3}, {1, 3}}},  // G
        {{{3, 1}, {3, 2}, {1, 3}, {2, 3}}},  // H
        {{{3, 2}, {3, 2}, {2, 3}, {2, 3}}},  // I
        {{{3, 2}, {1, 2}, {2, 3}, {2, 1}}},  // J
        {{{1, 2}, {1, 2}, {2, 1}, {2, 1}}},  // K
    }}};
    return table;
}

inline int table_lookup(BRegion region, int offset, PlayerRole role) {
    if (offset < 1 || offset > 4)
        throw std::out_of_range("table_lookup: offset must be in 1..4");
    const JointAction& cell = play_table().cells[static_cast<int>(region)][offset - 1];
    return own_arm(cell, role);
}

// Region compatibility: a path E-F-G-H-I-J-K plus the chords E-G, G-I, I-K,
// F-H, H-J, and every region with itself. Two compatible regions never map
// the two players to the same arm at any offset; the unit tests verify this
// against the table directly.
inline bool compatible(BRegion u, BRegion v) {
    // path edges are the distance-1 pairs, the five chords the distance-2 ones
    const int d = static_cast<int>(u) - static_cast<int>(v);
    return d >= -2 && d <= 2;
}

// Per-arm running estimate q_t(i): mean of the observed bits on arm i, zero
// before the first pull. Collision rounds contribute a forced 1 via the
// environment, which is exactly the biased estimator the strategy expects.
struct ArmEstimates {
    std::array<long long, 3> pulls{0, 0, 0};
    std::array<double, 3> sums{0.0, 0.0, 0.0};

    void update(int arm, std::uint8_t loss_bit) {
        check_arm(arm);
        if (loss_bit > 1)
            throw std::invalid_argument("update_estimate: loss bit must be 0 or 1");
        ++pulls[arm - 1];
        sums[arm - 1] += loss_bit;
    }

    CubePoint mean() const {
        CubePoint q;
        for (int i = 0; i < 3; ++i)
            q[i] = pulls[i] == 0 ? 0.0 : sums[i] / static_cast<double>(pulls[i]);
        return q;
    }
};

inline ArmEstimates update_estimate(ArmEstimates state, int arm, std::uint8_t loss_bit) {
    state.update(arm, loss_bit);
    return state;
}

// One bandit-partition player. The region is recomputed only at block starts
// (t = 1 mod 4) and frozen for the block, so a player in an exploration
// region plays all three arms even if its estimate oscillates mid-block.
class BanditPlayer {
  public:
    BanditPlayer(PlayerRole role, const BanditConfig& cfg, double shared_theta)
        : role_(role), cfg_(cfg), theta_(shared_theta) {}

    int act(long long t) {
        if ((t - 1) % 4 == 0)
            block_region_ = classify_bandit(estimates_.mean(), t, theta_, cfg_);
        const int offset = static_cast<int>((t - 1) % 4) + 1;
        return table_lookup(block_region_, offset, role_);
    }

    void observe(int arm, std::uint8_t loss_bit) { estimates_.update(arm, loss_bit); }

    BRegion block_region() const { return block_region_; }
    const ArmEstimates& estimates() const { return estimates_; }

    bool exploiting() const {
        return block_region_ == BRegion::E || block_region_ == BRegion::G ||
               block_region_ == BRegion::I || block_region_ == BRegion::K;
    }

  private:
    PlayerRole role_;
    BanditConfig cfg_;
    double theta_;
    BRegion block_region_ = BRegion::H;
    ArmEstimates estimates_;
};

}  // namespace tandem

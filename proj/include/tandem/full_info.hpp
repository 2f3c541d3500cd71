#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include "tandem/environment.hpp"
#include "tandem/geometry.hpp"

namespace tandem {

// Merged region labels of the full-information partition.
enum class FIRegion { A, B, C, D };

// Raw sub-regions before merging B = B' u B'' and C = C' u C''.
enum class FISubRegion { A, Bp, Bpp, Cp, Cpp, D };

enum class InterfaceMode {
    RandomTheta,  // shared Theta drawn once, uniform on [pi/3, pi]
    Dynamic       // deterministic schedule theta_t sweeping [pi/3, pi)
};

struct FIConfig {
    long long horizon = 0;
    double w_scale = 1.0;  // multiplier on the 16*sqrt(log(T)/t) width
    InterfaceMode interface_mode = InterfaceMode::RandomTheta;

    FIConfig() = default;
    FIConfig(long long T, double scale, InterfaceMode mode = InterfaceMode::RandomTheta)
        : horizon(T), w_scale(scale), interface_mode(mode) {
        if (T < 1) throw std::invalid_argument("full-info config: horizon must be >= 1");
        if (!(scale > 0.0))
            throw std::invalid_argument("full-info config: w_scale must be > 0");
    }
};

// Padding width w_t = w_scale * 16 * sqrt(log(T)/t), natural log.
inline double w_full(long long t, const FIConfig& cfg) {
    if (t < 1 || t > cfg.horizon) throw std::out_of_range("w_full: t outside [1, T]");
    return cfg.w_scale * 16.0 *
           std::sqrt(std::log(static_cast<double>(cfg.horizon)) / static_cast<double>(t));
}

// Deterministic interface angle: theta_t = pi/3 + (2pi/3) * (t - 2^k) / 2^k
// for 2^k <= t < 2^(k+1); sweeps [pi/3, pi) once per dyadic block.
inline double dynamic_theta(long long t) {
    if (t < 1) throw std::out_of_range("dynamic_theta: t must be >= 1");
    long long block = 1;
    while (block * 2 <= t) block *= 2;
    return std::numbers::pi / 3.0 +
           (2.0 * std::numbers::pi / 3.0) * static_cast<double>(t - block) /
               static_cast<double>(block);
}

// Membership predicate for one sub-region, with the padding width passed
// explicitly. The six predicates cover the cube exactly once: the sector
// clauses partition [0, 2pi) (with theta(r=0) = 0 sending the axis to B''),
// and within the [pi/3, Theta) and [Theta, pi) sectors the distance test to
// the interface half-plane splits A/B' and C'/D.
inline bool fi_predicate(FISubRegion s, const CylPoint& c, double interface_theta,
                         double w) {
    constexpr double pi = std::numbers::pi;
    const double theta = c.theta;
    const double d = dist_to_halfplane(c, HalfPlane{interface_theta});
    switch (s) {
        case FISubRegion::A:
            return theta >= pi / 3.0 && theta < interface_theta && d >= w;
        case FISubRegion::Bp:
            return theta >= pi / 3.0 && theta < interface_theta && d < w;
        case FISubRegion::Cp:
            return theta >= interface_theta && theta < pi && d < w && c.r > 0.0;
        case FISubRegion::D:
            return theta >= interface_theta && theta < pi && d >= w;
        case FISubRegion::Bpp:
            return theta < pi / 3.0 || theta >= 5.0 * pi / 3.0;
        case FISubRegion::Cpp:
            return theta >= pi && theta < 5.0 * pi / 3.0 && c.r > 0.0;
    }
    return false;
}

inline FIRegion merge_fi(FISubRegion s) {
    switch (s) {
        case FISubRegion::A: return FIRegion::A;
        case FISubRegion::Bp:
        case FISubRegion::Bpp: return FIRegion::B;
        case FISubRegion::Cp:
        case FISubRegion::Cpp: return FIRegion::C;
        case FISubRegion::D: return FIRegion::D;
    }
    return FIRegion::B;
}

inline FISubRegion classify_fi_sub_w(const CubePoint& q, double interface_theta,
                                     double w) {
    const CylPoint c = to_cylindrical(q);
    constexpr std::array<FISubRegion, 6> all{FISubRegion::A,   FISubRegion::Bp,
                                             FISubRegion::Bpp, FISubRegion::Cp,
                                             FISubRegion::Cpp, FISubRegion::D};
    for (FISubRegion s : all)
        if (fi_predicate(s, c, interface_theta, w)) return s;
    // unreachable for normalized angles; the sector clauses are exhaustive
    return FISubRegion::Bpp;
}

inline FIRegion classify_fi_w(const CubePoint& q, double interface_theta, double w) {
    return merge_fi(classify_fi_sub_w(q, interface_theta, w));
}

inline FIRegion classify_fi(const CubePoint& q, long long t, double interface_theta,
                            const FIConfig& cfg) {
    return classify_fi_w(q, interface_theta, w_full(t, cfg));
}

// Fixed coloring: the joint action assigned to each merged region.
inline JointAction color_fi(FIRegion r) {
    switch (r) {
        case FIRegion::A: return {2, 1};
        case FIRegion::B: return {3, 1};
        case FIRegion::C: return {3, 2};
        case FIRegion::D: return {1, 2};
    }
    return {3, 1};
}

// Running-mean state for one full-information player: q_t(i) is the mean of
// the first t-1 observed loss vectors, zero before the first observation.
class FIPlayer {
  public:
    FIPlayer(PlayerRole role, const FIConfig& cfg, double shared_theta)
        : role_(role), cfg_(cfg), shared_theta_(shared_theta) {}

    int act(long long t) const {
        const double iface = cfg_.interface_mode == InterfaceMode::Dynamic
                                 ? dynamic_theta(t)
                                 : shared_theta_;
        const FIRegion region = classify_fi(mean(), t, iface, cfg_);
        return own_arm(color_fi(region), role_);
    }

    void observe(const std::array<std::uint8_t, 3>& losses) {
        for (int i = 0; i < 3; ++i) sums_[i] += losses[i];
        ++rounds_;
    }

    CubePoint mean() const {
        if (rounds_ == 0) return CubePoint{};
        CubePoint q;
        for (int i = 0; i < 3; ++i) q[i] = sums_[i] / static_cast<double>(rounds_);
        return q;
    }

    long long observations() const { return rounds_; }

  private:
    PlayerRole role_;
    FIConfig cfg_;
    double shared_theta_;
    std::array<double, 3> sums_{0.0, 0.0, 0.0};
    long long rounds_ = 0;
};

}  // namespace tandem

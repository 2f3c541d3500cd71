#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string_view>

#include "tandem/environment.hpp"
#include "tandem/geometry.hpp"
#include "tandem/rng.hpp"

namespace tandem {

// Hard family: means on the circle {m = 1/2, r = sqrt(3/2) * T^(-eps)} with
// the angle drawn from a mixture reinforced near the three half-planes where
// two coordinates tie.
struct HardInstanceConfig {
    long long horizon = 0;
    double eps = 0.2;

    HardInstanceConfig(long long T, double epsilon) : horizon(T), eps(epsilon) {
        if (T < 1) throw std::invalid_argument("hard instance: horizon must be >= 1");
        if (!(eps > 0.0 && eps < 0.25))
            throw std::invalid_argument("hard instance: eps must lie in (0, 1/4)");
        if (!(interval_halfwidth() / 2.0 < std::numbers::pi / 6.0))
            throw std::invalid_argument(
                "hard instance: T^(-1/2+2eps) must be < pi/6 (intervals would overlap)");
    }

    // Each reinforcement interval is [c - 2T^(-1/2+2eps), c + 2T^(-1/2+2eps)].
    double interval_halfwidth() const {
        return 2.0 * std::pow(static_cast<double>(horizon), -0.5 + 2.0 * eps);
    }

    double circle_radius() const {
        return std::sqrt(1.5) * std::pow(static_cast<double>(horizon), -eps);
    }

    // Closed-form mass of the reinforced intervals: 1/2 + |I| / (4pi).
    double interval_mass() const {
        return 0.5 + 6.0 * interval_halfwidth() / (4.0 * std::numbers::pi);
    }
};

inline constexpr std::array<double, 3> kReinforcedCenters{
    std::numbers::pi / 3.0, std::numbers::pi, 5.0 * std::numbers::pi / 3.0};

// Which reinforcement interval (0,1,2) an angle falls in, or -1.
inline int hard_interval_index(double theta, const HardInstanceConfig& cfg) {
    const double h = cfg.interval_halfwidth();
    for (int i = 0; i < 3; ++i)
        if (std::fabs(theta - kReinforcedCenters[i]) <= h) return i;
    return -1;
}

// Diagnostic label for a sampled angle: the reinforced intervals I1/I2/I3
// (arm i clearly best, other two tied) take precedence over the in-between
// arcs I12/I23/I31 (two arms clearly better than the third). Drives no logic.
inline std::string_view hard_theta_label(double theta, const HardInstanceConfig& cfg) {
    switch (hard_interval_index(theta, cfg)) {
        case 0: return "I1";
        case 1: return "I2";
        case 2: return "I3";
        default: break;
    }
    const double d = cfg.interval_halfwidth() / 2.0;  // T^(-1/2+2eps)
    const double t = normalize_angle(theta);
    if (t >= kReinforcedCenters[0] + d && t <= kReinforcedCenters[1] - d) return "I12";
    if (t >= kReinforcedCenters[1] + d && t <= kReinforcedCenters[2] - d) return "I23";
    return "I31";
}

// Mixture draw: uniform on [0, 2pi] with probability 1/2, else uniform on the
// union of the three reinforcement intervals.
inline double sample_hard_theta(const HardInstanceConfig& cfg, RandomStream& rng) {
    if (rng.uniform() < 0.5) return normalize_angle(rng.uniform(0.0, two_pi));
    const double h = cfg.interval_halfwidth();
    const auto which = static_cast<int>(rng.below(3));
    return normalize_angle(rng.uniform(kReinforcedCenters[which] - h,
                                       kReinforcedCenters[which] + h));
}

inline Instance hard_instance(double theta, const HardInstanceConfig& cfg) {
    return Instance(from_cylindrical({0.5, cfg.circle_radius(), normalize_angle(theta)}));
}

inline Instance random_instance(RandomStream& rng) {
    CubePoint p;
    for (int i = 0; i < 3; ++i) p[i] = rng.uniform();
    return Instance(p);
}

inline Instance fixed_instance(double p1, double p2, double p3) {
    return Instance(CubePoint{{p1, p2, p3}});
}

}  // namespace tandem

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "tandem/bandit_partition.hpp"
#include "tandem/full_info.hpp"
#include "tandem/geometry.hpp"
#include "tandem/rng.hpp"

namespace tandem {

// Verification suites behind the check-geometry subcommand. The distance
// oracle here is deliberately independent of dist_to_halfplane: it minimizes
// over a discretization of the half-plane itself.

struct PropertyReport {
    std::string name;
    long long checked = 0;
    long long failed = 0;
};

// Brute-force distance from a Cartesian point to the half-plane {theta=phi}:
// the half-plane is {(m,m,m) + s*u : s >= 0, m real} with u the unit radial
// direction at angle phi. The m component projects out exactly (u is
// orthogonal to (1,1,1)), leaving a 1D scan over s, refined around the best
// cell. No cylindrical coordinates of the query point are involved.
inline double brute_force_halfplane_distance(const CubePoint& p, double phi) {
    constexpr double third = 2.0 * std::numbers::pi / 3.0;
    const std::array<double, 3> u{detail::kSqrt23 * std::cos(phi + third),
                                  detail::kSqrt23 * std::cos(phi),
                                  detail::kSqrt23 * std::cos(phi - third)};
    const double m = (p[0] + p[1] + p[2]) / 3.0;
    const std::array<double, 3> dev{p[0] - m, p[1] - m, p[2] - m};
    auto sq_dist_at = [&](double s) {
        const double d0 = dev[0] - s * u[0];
        const double d1 = dev[1] - s * u[1];
        const double d2 = dev[2] - s * u[2];
        return d0 * d0 + d1 * d1 + d2 * d2;
    };

    double lo = 0.0, hi = 4.0, best_s = 0.0, best = sq_dist_at(0.0);
    for (int pass = 0; pass < 6; ++pass) {
        const int steps = 400;
        const double h = (hi - lo) / steps;
        for (int i = 0; i <= steps; ++i) {
            const double s = lo + h * i;
            if (s < 0.0) continue;
            const double d = sq_dist_at(s);
            if (d < best) {
                best = d;
                best_s = s;
            }
        }
        lo = std::max(0.0, best_s - h);
        hi = best_s + h;
    }
    return std::sqrt(best);
}

namespace checks {

inline CubePoint random_cube_point(RandomStream& rng) {
    return CubePoint{{rng.uniform(), rng.uniform(), rng.uniform()}};
}

inline PropertyReport roundtrip(RandomStream& rng, long long samples = 100000,
                                double tol = 1e-9) {
    PropertyReport rep{"geometry/cylindrical-roundtrip", 0, 0};
    for (long long i = 0; i < samples; ++i) {
        const CubePoint p = random_cube_point(rng);
        const CubePoint back = from_cylindrical(to_cylindrical(p));
        ++rep.checked;
        if (euclidean_distance(p, back) >= tol) ++rep.failed;
    }
    return rep;
}

inline PropertyReport halfplane_oracle(RandomStream& rng, long long samples = 10000,
                                       double tol = 1e-6) {
    PropertyReport rep{"geometry/halfplane-distance-oracle", 0, 0};
    for (long long i = 0; i < samples; ++i) {
        const CubePoint p = random_cube_point(rng);
        const double phi = rng.uniform(0.0, two_pi);
        const double fast = dist_to_halfplane(to_cylindrical(p), HalfPlane{phi});
        const double slow = brute_force_halfplane_distance(p, phi);
        ++rep.checked;
        if (std::fabs(fast - slow) >= tol) ++rep.failed;
    }
    return rep;
}

// d(p, {theta=phi}) does not depend on the mean level m.
inline PropertyReport halfplane_m_invariance(RandomStream& rng,
                                             long long samples = 20000) {
    PropertyReport rep{"geometry/halfplane-m-invariance", 0, 0};
    for (long long i = 0; i < samples; ++i) {
        CylPoint c{rng.uniform(), rng.uniform(0.0, 1.2), rng.uniform(0.0, two_pi)};
        const HalfPlane h{rng.uniform(0.0, two_pi)};
        const double d1 = dist_to_halfplane(c, h);
        c.m = rng.uniform(-1.0, 2.0);
        const double d2 = dist_to_halfplane(c, h);
        ++rep.checked;
        if (std::fabs(d1 - d2) > 1e-12) ++rep.failed;
    }
    return rep;
}

// |p*(x) - p*(y)| <= 2 ||x - y||_2
inline PropertyReport optimum_lipschitz(RandomStream& rng, long long samples = 100000) {
    PropertyReport rep{"geometry/pair-optimum-2-lipschitz", 0, 0};
    for (long long i = 0; i < samples; ++i) {
        const CubePoint x = random_cube_point(rng);
        const CubePoint y = random_cube_point(rng);
        ++rep.checked;
        if (std::fabs(pair_optimum(x) - pair_optimum(y)) >
            2.0 * euclidean_distance(x, y) + 1e-12)
            ++rep.failed;
    }
    return rep;
}

// The worst arm's sector: p3 maximal iff theta in [pi/3, pi], p1 maximal iff
// theta in [pi, 5pi/3], p2 maximal otherwise (checked off the boundaries).
inline PropertyReport top_arm_sectors(RandomStream& rng, long long samples = 100000) {
    PropertyReport rep{"geometry/top-arm-sectors", 0, 0};
    constexpr double pi = std::numbers::pi;
    for (long long i = 0; i < samples; ++i) {
        const CubePoint p = random_cube_point(rng);
        if (p[0] == p[1] || p[1] == p[2] || p[0] == p[2]) continue;
        const CylPoint c = to_cylindrical(p);
        int max_arm = 1;
        if (p[1] > p[max_arm - 1]) max_arm = 2;
        if (p[2] > p[max_arm - 1]) max_arm = 3;
        int expected;
        if (c.theta >= pi / 3.0 && c.theta <= pi)
            expected = 3;
        else if (c.theta >= pi && c.theta <= 5.0 * pi / 3.0)
            expected = 1;
        else
            expected = 2;
        ++rep.checked;
        if (max_arm != expected) ++rep.failed;
    }
    return rep;
}

inline PropertyReport fi_partition_totality(RandomStream& rng,
                                            long long samples = 1000000) {
    PropertyReport rep{"full-info/partition-totality", 0, 0};
    constexpr std::array<FISubRegion, 6> subs{FISubRegion::A,   FISubRegion::Bp,
                                              FISubRegion::Bpp, FISubRegion::Cp,
                                              FISubRegion::Cpp, FISubRegion::D};
    for (long long i = 0; i < samples; ++i) {
        const CubePoint q = random_cube_point(rng);
        const double theta = rng.uniform(std::numbers::pi / 3.0, std::numbers::pi);
        const double w = rng.uniform(0.005, 1.5);
        const CylPoint c = to_cylindrical(q);
        int holds = 0;
        FISubRegion found = FISubRegion::Bpp;
        for (FISubRegion s : subs)
            if (fi_predicate(s, c, theta, w)) {
                ++holds;
                found = s;
            }
        ++rep.checked;
        if (holds != 1 || classify_fi_w(q, theta, w) != merge_fi(found)) ++rep.failed;
    }
    return rep;
}

inline PropertyReport bandit_partition_totality(RandomStream& rng,
                                                long long samples = 1000000) {
    PropertyReport rep{"bandit/partition-totality", 0, 0};
    for (long long i = 0; i < samples; ++i) {
        const CubePoint q = random_cube_point(rng);
        const double theta = rng.uniform(std::numbers::pi / 3.0, std::numbers::pi);
        const double w = rng.uniform(0.005, 1.5);
        const CylPoint c = to_cylindrical(q);
        int holds = 0;
        BRegion found = BRegion::H;
        for (BRegion reg : kAllBRegions)
            if (bandit_predicate(reg, c, theta, w)) {
                ++holds;
                found = reg;
            }
        ++rep.checked;
        if (holds != 1 || classify_bandit_w(q, theta, w) != found) ++rep.failed;
    }
    return rep;
}

// Sample points under a common (Theta, w), bucket them by region, and check
// every cross pair from forbidden region pairs is at least w apart.
inline PropertyReport fi_separation(RandomStream& rng, long long target_pairs = 100000) {
    PropertyReport rep{"full-info/non-neighbor-separation", 0, 0};
    constexpr std::array<std::pair<FIRegion, FIRegion>, 3> non_neighbors{
        {{FIRegion::A, FIRegion::D},
         {FIRegion::A, FIRegion::C},
         {FIRegion::B, FIRegion::D}}};
    while (rep.checked < target_pairs) {
        const double theta = rng.uniform(std::numbers::pi / 3.0, std::numbers::pi);
        const double w = rng.uniform(0.02, 0.4);
        std::array<std::vector<CubePoint>, 4> buckets;
        for (int i = 0; i < 400; ++i) {
            const CubePoint q = random_cube_point(rng);
            buckets[static_cast<int>(classify_fi_w(q, theta, w))].push_back(q);
        }
        for (const auto& [u, v] : non_neighbors) {
            const auto& us = buckets[static_cast<int>(u)];
            const auto& vs = buckets[static_cast<int>(v)];
            for (const CubePoint& x : us)
                for (const CubePoint& y : vs) {
                    ++rep.checked;
                    if (euclidean_distance(x, y) < w - 1e-9) ++rep.failed;
                }
        }
    }
    return rep;
}

inline PropertyReport bandit_separation(RandomStream& rng,
                                        long long target_pairs = 100000) {
    PropertyReport rep{"bandit/incompatible-separation", 0, 0};
    while (rep.checked < target_pairs) {
        const double theta = rng.uniform(std::numbers::pi / 3.0, std::numbers::pi);
        const double w = rng.uniform(0.02, 0.3);
        std::array<std::vector<CubePoint>, 7> buckets;
        for (int i = 0; i < 400; ++i) {
            const CubePoint q = random_cube_point(rng);
            buckets[static_cast<int>(classify_bandit_w(q, theta, w))].push_back(q);
        }
        for (BRegion u : kAllBRegions)
            for (BRegion v : kAllBRegions) {
                if (static_cast<int>(u) >= static_cast<int>(v) || compatible(u, v))
                    continue;
                for (const CubePoint& x : buckets[static_cast<int>(u)])
                    for (const CubePoint& y : buckets[static_cast<int>(v)]) {
                        ++rep.checked;
                        if (euclidean_distance(x, y) < w - 1e-9) ++rep.failed;
                    }
            }
    }
    return rep;
}

// compatible() must equal the direct play-table check on all 49 pairs.
inline PropertyReport compatibility_table(RandomStream&) {
    PropertyReport rep{"bandit/compatibility-vs-play-table", 0, 0};
    for (BRegion u : kAllBRegions)
        for (BRegion v : kAllBRegions) {
            bool table_safe = true;
            for (int off = 1; off <= 4; ++off) {
                if (table_lookup(u, off, PlayerRole::Alice) ==
                    table_lookup(v, off, PlayerRole::Bob))
                    table_safe = false;
                if (table_lookup(v, off, PlayerRole::Alice) ==
                    table_lookup(u, off, PlayerRole::Bob))
                    table_safe = false;
            }
            ++rep.checked;
            if (table_safe != compatible(u, v)) ++rep.failed;
        }
    return rep;
}

// Neighboring-or-equal full-information regions never color both players
// onto the same arm.
inline PropertyReport fi_coloring_safety(RandomStream&) {
    PropertyReport rep{"full-info/coloring-safety", 0, 0};
    constexpr std::array<std::pair<FIRegion, FIRegion>, 7> adjacent_or_equal{
        {{FIRegion::A, FIRegion::A},
         {FIRegion::B, FIRegion::B},
         {FIRegion::C, FIRegion::C},
         {FIRegion::D, FIRegion::D},
         {FIRegion::A, FIRegion::B},
         {FIRegion::B, FIRegion::C},
         {FIRegion::C, FIRegion::D}}};
    for (const auto& [u, v] : adjacent_or_equal) {
        ++rep.checked;
        if (color_fi(u).arm_a == color_fi(v).arm_b ||
            color_fi(v).arm_a == color_fi(u).arm_b)
            ++rep.failed;
    }
    return rep;
}

// Dynamic-interface counting bound: for every (r, theta) on the grid,
// #{t <= T : angdist(theta, theta_t) <= pi*w_t/r} <= (3/r) * sum_t w_t.
inline PropertyReport dynamic_counting_bound(RandomStream&, long long T = 16384,
                                             double w_scale = 1.0) {
    PropertyReport rep{"full-info/dynamic-counting-bound", 0, 0};
    const FIConfig cfg(T, w_scale, InterfaceMode::Dynamic);
    std::vector<double> theta_t(static_cast<std::size_t>(T) + 1);
    std::vector<double> w_t(static_cast<std::size_t>(T) + 1);
    double w_sum = 0.0;
    for (long long t = 1; t <= T; ++t) {
        theta_t[static_cast<std::size_t>(t)] = dynamic_theta(t);
        w_t[static_cast<std::size_t>(t)] = w_full(t, cfg);
        w_sum += w_t[static_cast<std::size_t>(t)];
    }
    const double r_max = std::sqrt(6.0) / 2.0;
    for (int ri = 1; ri <= 100; ++ri) {
        const double r = r_max * ri / 100.0;
        const double bound = 3.0 / r * w_sum;
        for (int ti = 0; ti < 360; ++ti) {
            const double theta = two_pi * ti / 360.0;
            long long count = 0;
            for (long long t = 1; t <= T; ++t)
                if (angular_distance(theta, theta_t[static_cast<std::size_t>(t)]) <=
                    std::numbers::pi * w_t[static_cast<std::size_t>(t)] / r)
                    ++count;
            ++rep.checked;
            if (static_cast<double>(count) > bound) ++rep.failed;
        }
    }
    return rep;
}

}  // namespace checks

inline std::vector<PropertyReport> run_property_suites(std::uint64_t seed) {
    RandomStream rng(splitmix64(seed));
    std::vector<PropertyReport> reports;
    reports.push_back(checks::roundtrip(rng));
    reports.push_back(checks::halfplane_oracle(rng));
    reports.push_back(checks::halfplane_m_invariance(rng));
    reports.push_back(checks::optimum_lipschitz(rng));
    reports.push_back(checks::top_arm_sectors(rng));
    reports.push_back(checks::fi_partition_totality(rng));
    reports.push_back(checks::bandit_partition_totality(rng));
    reports.push_back(checks::fi_separation(rng));
    reports.push_back(checks::bandit_separation(rng));
    reports.push_back(checks::compatibility_table(rng));
    reports.push_back(checks::fi_coloring_safety(rng));
    reports.push_back(checks::dynamic_counting_bound(rng));
    return reports;
}

}  // namespace tandem

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>

namespace tandem {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Wrap any angle into [0, 2pi).
inline double normalize_angle(double a) {
    double x = std::fmod(a, two_pi);
    if (x < 0.0) x += two_pi;
    if (x >= two_pi) x -= two_pi;  // fmod rounding can land exactly on 2pi
    return x;
}

// A point of the unit cube: the mean-loss vector (p1, p2, p3). Also used for
// empirical estimates q, which always stay in [0,1]^3; raw reconstructions
// from cylindrical coordinates may fall outside, see in_unit_cube().
struct CubePoint {
    std::array<double, 3> v{0.0, 0.0, 0.0};

    double operator[](std::size_t i) const { return v[i]; }
    double& operator[](std::size_t i) { return v[i]; }
};

inline bool in_unit_cube(const CubePoint& p) {
    return p[0] >= 0.0 && p[0] <= 1.0 && p[1] >= 0.0 && p[1] <= 1.0 && p[2] >= 0.0 &&
           p[2] <= 1.0;
}

inline double euclidean_distance(const CubePoint& x, const CubePoint& y) {
    const double d0 = x[0] - y[0], d1 = x[1] - y[1], d2 = x[2] - y[2];
    return std::sqrt(d0 * d0 + d1 * d1 + d2 * d2);
}

// Cylindrical coordinates around the cube diagonal {p1=p2=p3}:
// m = mean level, r = distance to the axis, theta = angle in [0, 2pi)
// measured from the radial direction that raises the middle coordinate.
// r = 0 fixes theta = 0 so that axis points land in a definite sector.
struct CylPoint {
    double m = 0.0;
    double r = 0.0;
    double theta = 0.0;
};

// Half-plane {theta = phi} containing the axis.
struct HalfPlane {
    double phi = 0.0;

    HalfPlane() = default;
    explicit HalfPlane(double angle) : phi(normalize_angle(angle)) {}
};

inline const HalfPlane kQ1{std::numbers::pi / 3.0};
inline const HalfPlane kQ2{std::numbers::pi};
inline const HalfPlane kQ3{5.0 * std::numbers::pi / 3.0};

namespace detail {
// Radial orthonormal pair spanning the plane orthogonal to (1,1,1):
// b points where the middle coordinate is largest, c completes the frame so
// that theta increases from arm 2's sector toward arm 3's sector.
inline constexpr double kSqrt23 = 0.81649658092772603273;  // sqrt(2/3)
inline constexpr std::array<double, 3> kDirB{-0.5 * kSqrt23, kSqrt23, -0.5 * kSqrt23};
inline constexpr std::array<double, 3> kDirC{-0.5 * std::numbers::sqrt2, 0.0,
                                             0.5 * std::numbers::sqrt2};
}  // namespace detail

inline CylPoint to_cylindrical(const CubePoint& p) {
    const double m = (p[0] + p[1] + p[2]) / 3.0;
    const std::array<double, 3> dev{p[0] - m, p[1] - m, p[2] - m};
    const double r = std::sqrt(dev[0] * dev[0] + dev[1] * dev[1] + dev[2] * dev[2]);
    if (r == 0.0) return {m, 0.0, 0.0};
    const double x = dev[0] * detail::kDirB[0] + dev[1] * detail::kDirB[1] +
                     dev[2] * detail::kDirB[2];
    const double y = dev[0] * detail::kDirC[0] + dev[1] * detail::kDirC[1] +
                     dev[2] * detail::kDirC[2];
    return {m, r, normalize_angle(std::atan2(y, x))};
}

// p_j = m + sqrt(2/3) * r * cos(theta + offset_j), offsets (+2pi/3, 0, -2pi/3).
// The result may lie outside the unit cube; callers that care check
// in_unit_cube().
inline CubePoint from_cylindrical(const CylPoint& c) {
    constexpr double third = 2.0 * std::numbers::pi / 3.0;
    CubePoint p;
    p[0] = c.m + detail::kSqrt23 * c.r * std::cos(c.theta + third);
    p[1] = c.m + detail::kSqrt23 * c.r * std::cos(c.theta);
    p[2] = c.m + detail::kSqrt23 * c.r * std::cos(c.theta - third);
    return p;
}

// p* = min(p1+p2, p1+p3, p2+p3): the best mean loss a colliding-free pair can
// achieve per round. Equals sum minus max, and is 2-Lipschitz in p.
inline double pair_optimum(const CubePoint& p) {
    return p[0] + p[1] + p[2] - std::max({p[0], p[1], p[2]});
}

// Wrapped absolute angular difference, in [0, pi].
inline double angular_distance(double t1, double t2) {
    double d = std::fabs(normalize_angle(t1) - normalize_angle(t2));
    if (d > std::numbers::pi) d = two_pi - d;
    return d;
}

// Euclidean distance from a point to the half-plane {theta = phi}. For an
// angular gap alpha <= pi/2 the foot of the perpendicular lies inside the
// half-plane and the distance is r*sin(alpha); beyond that the closest point
// is on the axis, at distance r. Independent of m.
inline double dist_to_halfplane(const CylPoint& c, const HalfPlane& h) {
    const double alpha = angular_distance(c.theta, h.phi);
    if (alpha <= std::numbers::pi / 2.0) return c.r * std::sin(alpha);
    return c.r;
}

inline double dist_to_halfplane_union(const CylPoint& c, std::span<const HalfPlane> hs) {
    if (hs.empty()) throw std::invalid_argument("dist_to_halfplane_union: empty union");
    double best = dist_to_halfplane(c, hs[0]);
    for (std::size_t i = 1; i < hs.size(); ++i)
        best = std::min(best, dist_to_halfplane(c, hs[i]));
    return best;
}

}  // namespace tandem

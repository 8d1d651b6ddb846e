#pragma once

// Test-only reference machinery: coordinate placement of simplices,
// long double scalar evaluation, and seeded Monte Carlo volume estimates.
// Nothing here is part of the rigorous path; it referees it.

#include <array>
#include <cmath>
#include <random>

#include "pentaver/simplex.hpp"

namespace oracle {

using Vec3 = std::array<long double, 3>;

inline long double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3 sub(const Vec3& a, const Vec3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline long double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

struct Placed {
    Vec3 v1, v2, v3;  // distinguished vertex at the origin
};

// Places a simplex with the given edge lengths; y must describe a
// non-degenerate simplex.
inline Placed place(const std::array<long double, 6>& y) {
    long double x1 = y[0] * y[0], x2 = y[1] * y[1], x3 = y[2] * y[2];
    long double x4 = y[3] * y[3], x5 = y[4] * y[4], x6 = y[5] * y[5];
    Vec3 v1 = {y[0], 0.0L, 0.0L};
    long double ax = (x1 + x2 - x6) / (2 * y[0]);
    long double ay = std::sqrt(x2 - ax * ax);
    Vec3 v2 = {ax, ay, 0.0L};
    long double bx = (x1 + x3 - x5) / (2 * y[0]);
    long double by = ((x2 + x3 - x4) / 2 - bx * ax) / ay;
    long double bz = std::sqrt(x3 - bx * bx - by * by);
    Vec3 v3 = {bx, by, bz};
    return {v1, v2, v3};
}

// Dihedral angle along the edge (0, v1): angle between the projections of
// v2 and v3 onto the plane perpendicular to v1.
inline long double dih_coord(const std::array<long double, 6>& y) {
    Placed p = place(y);
    // v1 is the x-axis; drop the x component.
    long double u2y = p.v2[1], u2z = p.v2[2];
    long double u3y = p.v3[1], u3z = p.v3[2];
    long double c = (u2y * u3y + u2z * u3z) /
                    (std::sqrt(u2y * u2y + u2z * u2z) *
                     std::sqrt(u3y * u3y + u3z * u3z));
    if (c > 1.0L) c = 1.0L;
    if (c < -1.0L) c = -1.0L;
    return std::acos(c);
}

// Solid angle at the origin as the spherical excess: the sum of the three
// dihedral angles along the origin edges minus pi.
inline long double sol_excess(const std::array<long double, 6>& y) {
    long double s = 0.0L;
    for (int e = 0; e < 3; ++e) {
        std::array<long double, 6> p;
        for (int i = 0; i < 6; ++i) p[i] = y[pentaver::kEdgeFirst[e][i]];
        s += dih_coord(p);
    }
    return s - 3.14159265358979323846264338327950288L;
}

// Circumradius of a triangle from side lengths.
inline long double face_circumradius(long double a, long double b,
                                     long double c) {
    long double s = (a + b + c) / 2;
    long double area = std::sqrt(s * (s - a) * (s - b) * (s - c));
    return a * b * c / (4 * area);
}

// Monte Carlo estimate of the geometric Voronoi volume of the origin inside
// the simplex: |{p in S : |p| <= |p - v_i| for all i}|.
// Returns (estimate, standard error).
inline std::pair<long double, long double> mc_voronoi_volume(
    const std::array<long double, 6>& y, int samples, std::uint64_t seed) {
    Placed pl = place(y);
    long double det =
        pl.v1[0] * (pl.v2[1] * pl.v3[2] - pl.v2[2] * pl.v3[1]) -
        pl.v1[1] * (pl.v2[0] * pl.v3[2] - pl.v2[2] * pl.v3[0]) +
        pl.v1[2] * (pl.v2[0] * pl.v3[1] - pl.v2[1] * pl.v3[0]);
    long double vol = std::abs(det) / 6.0L;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int hit = 0;
    for (int i = 0; i < samples; ++i) {
        // uniform barycentric coordinates in the tetrahedron
        double s = u(rng), t = u(rng), w = u(rng);
        if (s + t > 1.0) { s = 1.0 - s; t = 1.0 - t; }
        if (t + w > 1.0) { double tmp = w; w = 1.0 - s - t; t = 1.0 - tmp; }
        else if (s + t + w > 1.0) { double tmp = w; w = s + t + w - 1.0; s = 1.0 - t - tmp; }
        long double b1 = s, b2 = t, b3 = w;
        Vec3 p = {b1 * pl.v1[0] + b2 * pl.v2[0] + b3 * pl.v3[0],
                  b1 * pl.v1[1] + b2 * pl.v2[1] + b3 * pl.v3[1],
                  b1 * pl.v1[2] + b2 * pl.v2[2] + b3 * pl.v3[2]};
        long double d0 = dot(p, p);
        bool inside = d0 <= dot(sub(p, pl.v1), sub(p, pl.v1)) &&
                      d0 <= dot(sub(p, pl.v2), sub(p, pl.v2)) &&
                      d0 <= dot(sub(p, pl.v3), sub(p, pl.v3));
        hit += inside;
    }
    long double frac = static_cast<long double>(hit) / samples;
    long double se = vol * std::sqrt(frac * (1 - frac) / samples);
    return {vol * frac, se};
}

// Random edge lengths inside a box, componentwise uniform.
template <class Rng>
std::array<long double, 6> random_lengths(Rng& rng, const double lo[6],
                                          const double hi[6]) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::array<long double, 6> y;
    for (int i = 0; i < 6; ++i) y[i] = lo[i] + u(rng) * (hi[i] - lo[i]);
    return y;
}

inline std::array<pentaver::Interval, 6> to_point_intervals(
    const std::array<long double, 6>& y) {
    std::array<pentaver::Interval, 6> out;
    for (int i = 0; i < 6; ++i) out[i] = pentaver::Interval(static_cast<double>(y[i]));
    return out;
}

}  // namespace oracle

#pragma once

#include <array>
#include <cstdint>

#include "pentaver/scalar.hpp"

namespace pentaver {

// A face of a cell became degenerate (area enclosure touches zero); the
// caller is expected to split rather than score.
struct DegenerateFace : EvaluationTooCoarse {
    using EvaluationTooCoarse::EvaluationTooCoarse;
};

// Edge lengths y1..y6 of a tetrahedron.  y1,y2,y3 are adjacent to the
// distinguished vertex (the origin); edge y_i lies opposite edge y_{i+3}.
struct EdgeLengths {
    std::array<Interval, 6> y;
    const Interval& operator[](int i) const { return y[i]; }
    Interval& operator[](int i) { return y[i]; }
};

// Squared edge lengths x_i = y_i^2.
struct SquaredLengths {
    std::array<Interval, 6> x;
    const Interval& operator[](int i) const { return x[i]; }
    Interval& operator[](int i) { return x[i]; }
};

SquaredLengths to_squares(const EdgeLengths& y);
EdgeLengths to_lengths(const SquaredLengths& x);

// Vertex relabelings that place each of the four vertices at the origin, in
// the order used by the compression average.
inline constexpr int kVertexLabelings[4][6] = {
    {0, 1, 2, 3, 4, 5},
    {0, 4, 5, 3, 1, 2},
    {1, 3, 5, 4, 0, 2},
    {2, 3, 4, 5, 0, 1},
};

// Relabelings that move edge i (i = 0,1,2) into the first slot, preserving
// the opposite-edge pairing, for dihedral angles along the origin edges.
inline constexpr int kEdgeFirst[3][6] = {
    {0, 1, 2, 3, 4, 5},
    {1, 0, 2, 4, 3, 5},
    {2, 0, 1, 5, 3, 4},
};

// Swap of the two vertices adjacent to the long edge of an upright quarter.
inline constexpr int kOctavorSwap[6] = {0, 4, 5, 3, 1, 2};

template <class C>
C permuted(const C& v, const int (&perm)[6]) {
    C r{};
    for (int i = 0; i < 6; ++i) r[i] = v[perm[i]];
    return r;
}

// ---------------------------------------------------------------------------
// Templated core formulas, shared by the interval path, the derivative jets
// and the long double serial reference.
// ---------------------------------------------------------------------------

// Cayley-Menger style polynomial; positive and negative terms are grouped as
// in the original verification code to keep interval growth down.
template <class T>
T delta_raw_t(const std::array<T, 6>& x) {
    const T& x1 = x[0];
    const T& x2 = x[1];
    const T& x3 = x[2];
    const T& x4 = x[3];
    const T& x5 = x[4];
    const T& x6 = x[5];
    T p = x1 * x4 * (x2 + x3 + x5 + x6) + x2 * x5 * (x1 + x3 + x4 + x6) +
          x3 * x6 * (x1 + x2 + x4 + x5);
    T n = x1 * x4 * (x1 + x4) + x2 * x5 * (x2 + x5) + x3 * x6 * (x3 + x6) +
          x3 * (x2 * x4 + x1 * x5) + x6 * (x1 * x2 + x4 * x5);
    return p - n;
}

// d(delta)/dx4.
template <class T>
T delta4_t(const std::array<T, 6>& x) {
    const T& x1 = x[0];
    const T& x2 = x[1];
    const T& x3 = x[2];
    const T& x4 = x[3];
    const T& x5 = x[4];
    const T& x6 = x[5];
    return x1 * (x2 + x3 + x5 + x6 - x1 - (x4 + x4)) + x2 * x5 + x3 * x6 -
           x2 * x3 - x5 * x6;
}

// Permutations under which delta is invariant, arranged so that slot i of
// the original lands in slot 4: d(delta)/dx_i = delta4(kDeltaGradPerm[i](x)).
inline constexpr int kDeltaGradPerm[6][6] = {
    {3, 4, 5, 0, 1, 2}, {4, 5, 3, 1, 2, 0}, {5, 3, 4, 2, 0, 1},
    {0, 1, 2, 3, 4, 5}, {1, 2, 0, 4, 5, 3}, {2, 0, 1, 5, 3, 4},
};

// Mean-value tightening of the delta enclosure on a box:
// delta(box) is intersected with delta(mid) + sum_i grad_i(box)(box_i - m_i).
// The straight grouped evaluation loses badly to operand dependency on wide
// boxes; the centered form keeps coarse grid cells evaluable.
Interval delta_boxed(const std::array<Interval, 6>& box);

template <class T>
T delta_tight_t(const std::array<T, 6>& x) {
    T d = delta_raw_t(x);
    if constexpr (!std::is_arithmetic_v<T>) {
        std::array<Interval, 6> box;
        for (int i = 0; i < 6; ++i) box[i] = value_of(x[i]);
        Interval better = delta_boxed(box);
        Interval v = value_of(d);
        if (better.intersects(v)) {
            Interval tight = i_intersect(better, v);
            if constexpr (std::is_same_v<T, Interval>) {
                d = tight;
            } else {
                d.v = tight;
            }
        }
    }
    return d;
}

// 16 * squared area of a triangle with squared sides (a, b, c), in the
// form 4ab - (a+b-c)^2 (fewer repeated operands than the symmetric form,
// so interval evaluation stays tighter).
template <class T>
T u_face_t(const T& a, const T& b, const T& c) {
    T four = ScalarFrom<T>::constant(Interval(4.0));
    return four * a * b - sqr(a + b - c);
}

// a(y): the denominator of the solid-angle arctangent.
template <class T>
T a_func_t(const std::array<T, 6>& y) {
    T x1 = sqr(y[0]), x2 = sqr(y[1]), x3 = sqr(y[2]);
    T x4 = sqr(y[3]), x5 = sqr(y[4]), x6 = sqr(y[5]);
    T half = ScalarFrom<T>::constant(Interval(0.5));
    return y[0] * y[1] * y[2] + half * (y[0] * (x2 + x3 - x4) +
                                        y[1] * (x1 + x3 - x5) +
                                        y[2] * (x1 + x2 - x6));
}

// sol from a precomputed sqrt(delta) and edge lengths (delta is invariant
// under the vertex relabelings, so callers share it).
template <class T>
T sol_from_parts(const T& sd, const std::array<T, 6>& y) {
    T two = ScalarFrom<T>::constant(Interval(2.0));
    T s = atan(sd / (two * a_func_t(y)));
    return s + s;
}

// sol(S) = 2 arctan(sqrt(delta) / (2 a)).
template <class T>
T sol_t(const std::array<T, 6>& x) {
    std::array<T, 6> y;
    for (int i = 0; i < 6; ++i) y[i] = sqrt(x[i]);
    T sd = sqrt(delta_tight_t(x));
    return sol_from_parts(sd, y);
}

// Dihedral angle along the first edge: pi/2 - arctan(delta4 / sqrt(4 x1 delta)).
template <class T>
T dih_t(const std::array<T, 6>& x) {
    T four = ScalarFrom<T>::constant(Interval(4.0));
    T half_pi = scalar_pi<T>() / ScalarFrom<T>::constant(Interval(2.0));
    T den = sqrt(four * x[0] * delta_tight_t(x));
    return half_pi - atan(delta4_t(x) / den);
}

// Signed height numerator for the face through the origin edges p,q with
// opposite edge pq and apex k: chi'(x) such that the distance from the face
// circumcenter to the simplex circumcenter is chi' / (2 sqrt(u * delta)).
// Arguments are for the face (1,2;6) with apex 3; permute for other faces.
template <class T>
T chi126_t(const std::array<T, 6>& x) {
    const T& x1 = x[0];
    const T& x2 = x[1];
    const T& x3 = x[2];
    const T& x4 = x[3];
    const T& x5 = x[4];
    const T& x6 = x[5];
    return x3 * u_face_t(x1, x2, x6) - x2 * (x1 - x2 + x6) * (x1 + x3 - x5) -
           x1 * (x2 - x1 + x6) * (x2 + x3 - x4);
}

// Face permutations mapping each origin face into the (1,2;6) slot.
inline constexpr int kFace126[6] = {0, 1, 2, 3, 4, 5};
inline constexpr int kFace135[6] = {0, 2, 1, 3, 5, 4};
inline constexpr int kFace234[6] = {1, 2, 0, 4, 5, 3};

// Analytic continuation of the Voronoi volume at the distinguished vertex,
// assembled from the six signed orthoschemes; sd = sqrt(delta).
template <class T>
T vor_volume_from_parts(const std::array<T, 6>& x, const T& sd) {
    T c48 = ScalarFrom<T>::constant(Interval(48.0));
    T acc = ScalarFrom<T>::constant(Interval(0.0));
    auto face = [&](const int (&perm)[6]) {
        std::array<T, 6> f;
        for (int i = 0; i < 6; ++i) f[i] = x[perm[i]];
        T u = u_face_t(f[0], f[1], f[5]);
        T chi = chi126_t(f);
        T legs = f[0] * (f[1] + f[5] - f[0]) + f[1] * (f[0] + f[5] - f[1]);
        acc = acc + chi * legs / (c48 * u * sd);
    };
    face(kFace126);
    face(kFace135);
    face(kFace234);
    return acc;
}

template <class T>
T vor_volume_t(const std::array<T, 6>& x) {
    T sd = sqrt(delta_tight_t(x));
    return vor_volume_from_parts(x, sd);
}

// Squared circumradius of the simplex.
template <class T>
T circumradius_sq_t(const std::array<T, 6>& x) {
    T u = u_face_t(x[0], x[1], x[5]);
    T chi = chi126_t(x);
    T four = ScalarFrom<T>::constant(Interval(4.0));
    T d = delta_tight_t(x);
    return (four * (x[0] * x[1] * x[5]) * d + sqr(chi)) / (four * u * d);
}

Interval pt_interval();
Interval delta_oct_interval();

// Compression score: -delta_oct vol + (1/3) sum of the four solid angles.
// delta, sqrt(delta) and the edge lengths are shared across the labelings.
template <class T>
T gma_t(const std::array<T, 6>& x) {
    T doct = ScalarFrom<T>::constant(delta_oct_interval());
    T twelve = ScalarFrom<T>::constant(Interval(12.0));
    T third = ScalarFrom<T>::constant(Interval(1.0) / Interval(3.0));
    T sd = sqrt(delta_tight_t(x));
    T vol = sd / twelve;
    std::array<T, 6> y;
    for (int i = 0; i < 6; ++i) y[i] = sqrt(x[i]);
    T sols = ScalarFrom<T>::constant(Interval(0.0));
    for (const auto& perm : kVertexLabelings) {
        std::array<T, 6> p;
        for (int i = 0; i < 6; ++i) p[i] = y[perm[i]];
        sols = sols + sol_from_parts(sd, p);
    }
    return third * sols - doct * vol;
}

// vor analytic score at the distinguished vertex.
template <class T>
T vor_t(const std::array<T, 6>& x) {
    T doct = ScalarFrom<T>::constant(delta_oct_interval());
    T third = ScalarFrom<T>::constant(Interval(1.0) / Interval(3.0));
    T four = ScalarFrom<T>::constant(Interval(4.0));
    T sd = sqrt(delta_tight_t(x));
    std::array<T, 6> y;
    for (int i = 0; i < 6; ++i) y[i] = sqrt(x[i]);
    return four * (third * sol_from_parts(sd, y) -
                   doct * vor_volume_from_parts(x, sd));
}

// vor averaged over the two vertices on the long edge of an upright quarter
// (long edge = y1).
template <class T>
T octavor_t(const std::array<T, 6>& x) {
    T doct = ScalarFrom<T>::constant(delta_oct_interval());
    T third = ScalarFrom<T>::constant(Interval(1.0) / Interval(3.0));
    T two = ScalarFrom<T>::constant(Interval(2.0));
    T sd = sqrt(delta_tight_t(x));
    std::array<T, 6> y;
    for (int i = 0; i < 6; ++i) y[i] = sqrt(x[i]);
    std::array<T, 6> sw, yw;
    for (int i = 0; i < 6; ++i) {
        sw[i] = x[kOctavorSwap[i]];
        yw[i] = y[kOctavorSwap[i]];
    }
    T sols = sol_from_parts(sd, y) + sol_from_parts(sd, yw);
    T vols = vor_volume_from_parts(x, sd) + vor_volume_from_parts(sw, sd);
    return two * (third * sols - doct * vols);
}

// ---------------------------------------------------------------------------
// Interval entry points with the verification-specific behavior: clamping,
// monotone corner evaluation, degeneracy signalling.
// ---------------------------------------------------------------------------

// Delta with both endpoints clamped at zero (simplices with negative delta
// do not exist).  Use delta_raw_t for feasibility tests.
Interval delta(const SquaredLengths& x);

// a(y) evaluated at the monotone corners (increasing in y1..y3, decreasing
// in y4..y6 on the ranges used here), lower endpoint clamped at zero.
Interval a_func(const EdgeLengths& y);

// vol = sqrt(delta)/12.
Interval volume(const SquaredLengths& x);

// Squared circumradius of a face with edge lengths (y1, y2, y3).
Interval eta_sq(const Interval& y1, const Interval& y2, const Interval& y3);
Interval eta_sq_x(const Interval& x1, const Interval& x2, const Interval& x3);

// Solid angle at the distinguished vertex (steradians).
Interval sol(const EdgeLengths& y);
Interval sol_x(const SquaredLengths& x);

// Dihedral angle along edge y1 (radians); dih_edge gives the angle along
// origin edge i = 0,1,2.
Interval dih(const EdgeLengths& y);
Interval dih_x(const SquaredLengths& x);
Interval dih_edge_x(const SquaredLengths& x, int edge);

Interval vor_volume_analytic(const EdgeLengths& y);
Interval vor_volume_analytic_x(const SquaredLengths& x);

Interval gma(const EdgeLengths& y);
Interval gma_x(const SquaredLengths& x);

Interval vor_score(const EdgeLengths& y);
Interval vor_score_x(const SquaredLengths& x);

Interval octavor(const EdgeLengths& y);
Interval octavor_x(const SquaredLengths& x);

Interval circumradius_sq(const SquaredLengths& x);

// ---------------------------------------------------------------------------
// Scoring rule dispatch.
// ---------------------------------------------------------------------------

enum class SimplexShape : std::uint8_t { QrTet, FlatQuarter, UprightQuarter };

enum class ScoreKind : std::uint8_t {
    Compression,
    VorAnalytic,
    Octavor,
    TruncatedVoronoi,
};

struct ScoreKindSet {
    bool compression = false;
    bool voronoi = false;  // VorAnalytic for flat / q.r., Octavor for upright
    bool ambiguous() const { return compression && voronoi; }
};

// Which scoring rules can apply somewhere on the cell.  Both flags set means
// the threshold surface crosses the cell and the search must cover both
// branches (or split).
ScoreKindSet score_kind_for(const EdgeLengths& y, SimplexShape shape);

}  // namespace pentaver

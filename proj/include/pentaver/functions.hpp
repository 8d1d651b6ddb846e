#pragma once

#include <string>
#include <vector>

#include "pentaver/autodiff.hpp"
#include "pentaver/simplex.hpp"
#include "pentaver/truncation.hpp"

namespace pentaver {

// The functions the search engine and the bound tables can evaluate, all
// over squared edge lengths x1..x6.
enum class FnId : int {
    Dih,         // dihedral angle along edge 1
    Sol,         // solid angle at the origin
    GmaVolume,   // sqrt(delta)/12
    VorVolume,   // analytic Voronoi volume at the origin
    Gma,         // compression score
    Vor,         // vor analytic score at the origin
    Octavor,     // averaged vor over the diagonal (diagonal = edge 1)
    TruncHalf,   // truncated Voronoi score of a half (diagonal = edge 6)
    EtaSq126,    // squared circumradius of the (y1,y2,y6) face
    EtaSq456,
    EtaSq135,
    X1,          // the first squared length itself
    DimredPoly,  // generated dimension-reduction polynomial
};

std::string fn_name(FnId fn);

// Templated truncated-cell volume; faces whose circumradius enclosure
// straddles sqrt(2) are only evaluable in the Interval instantiation (the
// closed forms are clamped there); derivative jets throw and the caller
// splits.
template <class T>
T trunc_volume_half_generic(const std::array<T, 6>& x) {
    constexpr bool is_iv = std::is_same_v<T, Interval>;
    if constexpr (is_iv) {
        return trunc_volume_half(SquaredLengths{x});
    } else {
        const T root2 = ScalarFrom<T>::constant(i_sqrt(Interval(2.0)));
        const T root8 = ScalarFrom<T>::constant(i_sqrt(Interval(8.0)));
        const T two = ScalarFrom<T>::constant(Interval(2.0));
        const T half = ScalarFrom<T>::constant(Interval(0.5));
        const T pi = scalar_pi<T>();
        T v = root8 / ScalarFrom<T>::constant(Interval(3.0)) * sol_t(x);
        constexpr int faces[3][3] = {{0, 2, 4}, {1, 2, 3}, {0, 1, 5}};
        T a_half[3];
        for (int i = 0; i < 6; ++i) {
            if (i < 3) a_half[i] = sqrt(x[i]) * half;
        }
        for (int e = 0; e < 3; ++e) {
            std::array<T, 6> p;
            for (int i = 0; i < 6; ++i) p[i] = x[kEdgeFirst[e][i]];
            T dih = dih_t(p);
            const T& a = a_half[e];
            T lens = pi * sqr(root2 - a) * (root8 + a) /
                     ScalarFrom<T>::constant(Interval(3.0));
            v = v - dih * lens / (two * pi);
        }
        for (const auto& f : faces) {
            if (value_of(x[f[2]]).lo() >= 8.0) continue;  // top edge >= 2 sqrt 2
            T u = u_face_t(x[f[0]], x[f[1]], x[f[2]]);
            T b2 = x[f[0]] * x[f[1]] * x[f[2]] / u;
            Interval b2v = value_of(b2);
            if (b2v.lo() >= 2.0) continue;
            if (b2v.hi() > 2.0)
                throw DegenerateFace(
                    "trunc volume: face circumradius straddles sqrt(2)");
            for (int e = 0; e < 2; ++e) {
                const T& a = a_half[f[e]];
                T s = sqrt(b2 - sqr(a));
                // generalized quoin, interior branch
                T r = sqrt(two - b2);
                T term1 = a * s * r * (two - sqr(r)) /
                          (ScalarFrom<T>::constant(Interval(6.0)) * b2);
                T term2 = root8 / ScalarFrom<T>::constant(Interval(3.0)) *
                          atan(a * r / (s * root2));
                T term3 = a * half *
                          (two - sqr(a) / ScalarFrom<T>::constant(Interval(3.0))) *
                          acos(s / sqrt(two - sqr(a)));
                v = v + term1 + term2 - term3;
            }
        }
        return v;
    }
}

// A sparse polynomial in x1..x6 with interval-exact coefficients; used for
// the committed dimension-reduction polynomial.
struct SparsePoly {
    struct Term {
        std::array<int, 6> e;
        Interval coeff;
    };
    std::vector<Term> terms;
};

// The committed degree-6 dimension-reduction polynomial (loaded once).
const SparsePoly& dimred_poly();

template <class T>
T eval_sparse_poly(const SparsePoly& p, const std::array<T, 6>& x) {
    // positive and negative coefficient groups summed separately
    int maxdeg = 0;
    for (const auto& t : p.terms)
        for (int e : t.e) maxdeg = std::max(maxdeg, e);
    std::array<std::array<T, 8>, 6> pw;
    for (int v = 0; v < 6; ++v) {
        pw[v][0] = ScalarFrom<T>::constant(Interval(1.0));
        for (int k = 1; k <= maxdeg; ++k) pw[v][k] = pw[v][k - 1] * x[v];
    }
    T pos = ScalarFrom<T>::constant(Interval(0.0));
    T neg = ScalarFrom<T>::constant(Interval(0.0));
    for (const auto& t : p.terms) {
        T m = ScalarFrom<T>::constant(i_abs(t.coeff));
        for (int v = 0; v < 6; ++v)
            if (t.e[v] > 0) m = m * pw[v][t.e[v]];
        if (t.coeff.lo() >= 0.0)
            pos = pos + m;
        else
            neg = neg + m;
    }
    return pos - neg;
}

// Evaluate a function over squared lengths for any supported scalar.  The
// Interval instantiation dispatches to the tightened concrete versions.
template <class T>
T eval_fn(FnId fn, const std::array<T, 6>& x) {
    if constexpr (std::is_same_v<T, Interval>) {
        SquaredLengths sx{x};
        switch (fn) {
            case FnId::Dih: return dih_x(sx);
            case FnId::Sol: return sol_x(sx);
            case FnId::GmaVolume: return volume(sx);
            case FnId::VorVolume: return vor_volume_analytic_x(sx);
            case FnId::Gma: return gma_x(sx);
            case FnId::Vor: return vor_score_x(sx);
            case FnId::Octavor: return octavor_x(sx);
            case FnId::TruncHalf: return trunc_score_simplex_x(sx);
            case FnId::EtaSq126: return eta_sq_x(x[0], x[1], x[5]);
            case FnId::EtaSq456: return eta_sq_x(x[3], x[4], x[5]);
            case FnId::EtaSq135: return eta_sq_x(x[0], x[2], x[4]);
            case FnId::X1: return x[0];
            case FnId::DimredPoly: return eval_sparse_poly(dimred_poly(), x);
        }
        throw std::logic_error("eval_fn: bad fn");
    } else {
        const T third =
            ScalarFrom<T>::constant(Interval(1.0) / Interval(3.0));
        const T four = ScalarFrom<T>::constant(Interval(4.0));
        const T doct = ScalarFrom<T>::constant(delta_oct_interval());
        switch (fn) {
            case FnId::Dih: return dih_t(x);
            case FnId::Sol: return sol_t(x);
            case FnId::GmaVolume:
                return sqrt(delta_raw_t(x)) /
                       ScalarFrom<T>::constant(Interval(12.0));
            case FnId::VorVolume: return vor_volume_t(x);
            case FnId::Gma: return gma_t(x);
            case FnId::Vor: return vor_t(x);
            case FnId::Octavor: return octavor_t(x);
            case FnId::TruncHalf:
                return four * (third * sol_t(x) -
                               doct * trunc_volume_half_generic(x));
            case FnId::EtaSq126:
                return x[0] * x[1] * x[5] / u_face_t(x[0], x[1], x[5]);
            case FnId::EtaSq456:
                return x[3] * x[4] * x[5] / u_face_t(x[3], x[4], x[5]);
            case FnId::EtaSq135:
                return x[0] * x[2] * x[4] / u_face_t(x[0], x[2], x[4]);
            case FnId::X1: return x[0];
            case FnId::DimredPoly:
                return eval_sparse_poly(dimred_poly(), x);
        }
        throw std::logic_error("eval_fn: bad fn");
    }
}

}  // namespace pentaver

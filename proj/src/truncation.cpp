#include "pentaver/truncation.hpp"

#include <chrono>
#include <cstdio>
#include <vector>

namespace pentaver {

namespace {

const Interval kRoot2 = i_sqrt(Interval(2.0));
const Interval kRoot8 = i_sqrt(Interval(8.0));

Interval acos_clamped(const Interval& arg) {
    Interval a = i_min(arg, Interval(1.0));
    if (a.lo() < -1.0) a = i_max(a, Interval(-1.0));
    return i_acos(a);
}

// Faces of the half at the origin: origin-edge slots (p, q) and the slot of
// the opposite (top) edge.  Slot 5 carries the diagonal.
struct FaceSlots {
    int p, q, opp;
};
constexpr FaceSlots kFaces[3] = {{0, 2, 4}, {1, 2, 3}, {0, 1, 5}};

}  // namespace

RogersFaceParams rogers_face_params(const Interval& t) {
    RogersFaceParams out;
    out.t = t;
    Interval den = Interval(16.0) - i_square(t);
    out.b = Interval(4.0) / i_sqrt(den);
    out.r = i_sqrt(i_max((Interval(16.0) - Interval(2.0) * i_square(t)) / den,
                         Interval(0.0)));
    out.s = t / i_sqrt(den);
    return out;
}

Interval lens_volume(const Interval& a) {
    return i_pi() * i_square(kRoot2 - a) * (kRoot8 + a) / Interval(3.0);
}

Interval quoin_generalized(const Interval& a, const Interval& s) {
    Interval b2 = i_square(a) + i_square(s);
    Interval r = i_sqrt(i_max(Interval(2.0) - b2, Interval(0.0)));
    Interval term1 =
        a * s * r * (Interval(2.0) - i_square(r)) / (Interval(6.0) * b2);
    Interval term2 = kRoot8 / Interval(3.0) * i_atan(a * r / (s * kRoot2));
    Interval rad = i_sqrt(Interval(2.0) - i_square(a));
    Interval term3 = a / Interval(2.0) *
                     (Interval(2.0) - i_square(a) / Interval(3.0)) *
                     acos_clamped(s / rad);
    return term1 + term2 - term3;
}

Interval quoin_V(const Interval& t) {
    RogersFaceParams f = rogers_face_params(t);
    return quoin_generalized(Interval(1.0), f.s);
}

Interval quoin_Vt(const Interval& t) {
    Interval eight_minus = i_max(Interval(8.0) - i_square(t), Interval(0.0));
    Interval num = Interval(-2.0) * kRoot2 * eight_minus * i_sqrt(eight_minus);
    Interval den = Interval(3.0) * i_square(Interval(16.0) - i_square(t));
    return num / den;
}

namespace {

struct HalfGeometry {
    Interval sol;
    Interval dih[3];
    Interval a[3];       // half edge lengths at the origin
    Interval lens[3];    // cap volumes beyond the bisectors
    bool face_active[3] = {false, false, false};
    Interval b2[3];
    Interval r_ext[3];
    Interval s_leg[3][2];   // in-face legs for slots (p, q)
    Interval quoin[3][2];   // quoin volumes
};

HalfGeometry half_geometry(const SquaredLengths& x) {
    HalfGeometry g;
    g.sol = sol_x(x);
    for (int i = 0; i < 3; ++i) {
        g.dih[i] = dih_edge_x(x, i);
        g.a[i] = i_sqrt(x[i]) / Interval(2.0);
        g.lens[i] = lens_volume(g.a[i]);
    }
    for (int fi = 0; fi < 3; ++fi) {
        const FaceSlots& f = kFaces[fi];
        Interval b2 = eta_sq_x(x[f.p], x[f.q], x[f.opp]);
        g.b2[fi] = b2;
        // A face whose top edge is at least 2 sqrt(2) has circumradius at
        // least sqrt(2) (half the longest side), independent of rounding.
        if (b2.lo() >= 2.0 || x[f.opp].lo() >= 8.0) continue;
        g.face_active[fi] = true;
        g.r_ext[fi] = i_sqrt(i_max(Interval(2.0) - b2, Interval(0.0)));
        int slots[2] = {f.p, f.q};
        for (int e = 0; e < 2; ++e) {
            Interval a = g.a[slots[e]];
            Interval s = i_sqrt(i_max(b2 - i_square(a), Interval(0.0)));
            g.s_leg[fi][e] = s;
            g.quoin[fi][e] = quoin_generalized(a, s);
        }
    }
    return g;
}

}  // namespace

Interval trunc_volume_half(const SquaredLengths& x) {
    HalfGeometry g = half_geometry(x);
    Interval two_pi = Interval(2.0) * i_pi();
    Interval v = kRoot8 / Interval(3.0) * g.sol;
    for (int i = 0; i < 3; ++i) v -= g.dih[i] * g.lens[i] / two_pi;
    for (int fi = 0; fi < 3; ++fi) {
        if (!g.face_active[fi]) continue;
        v += g.quoin[fi][0] + g.quoin[fi][1];
    }
    return v;
}

Interval trunc_score_simplex_x(const SquaredLengths& x) {
    Interval vol = trunc_volume_half(x);
    Interval s = sol_x(x);
    return Interval(4.0) * (s / Interval(3.0) - delta_oct_interval() * vol);
}

Interval trunc_score_simplex(const QuadClusterHalf& h) {
    return trunc_score_simplex_x(to_squares(h.y));
}

Interval trunc_score_symmetric(const SymmetricSquashedQuad& q) {
    EdgeLengths y{{Interval(2.0), Interval(2.0), Interval(2.0), q.side, q.side,
                   q.diagonal}};
    return Interval(2.0) * trunc_score_simplex_x(to_squares(y));
}

TruncAnatomy trunc_anatomy(const SquaredLengths& x) {
    HalfGeometry g = half_geometry(x);
    TruncAnatomy out;
    out.sol = g.sol;
    Interval sector = kRoot8 / Interval(3.0) * g.sol;

    // Extension angles per edge, collected from the flanking active faces.
    Interval delta_sum[3] = {Interval(0.0), Interval(0.0), Interval(0.0)};
    Interval rogers(0.0), quoins(0.0), flutes(0.0);
    for (int fi = 0; fi < 3; ++fi) {
        if (!g.face_active[fi]) continue;
        const FaceSlots& f = kFaces[fi];
        Interval r = g.r_ext[fi];
        int slots[2] = {f.p, f.q};
        Interval delta_e[2];
        Interval cos_th[2], sin_th[2];
        for (int e = 0; e < 2; ++e) {
            Interval s = g.s_leg[fi][e];
            delta_e[e] = i_atan(r / s);
            delta_sum[slots[e]] += delta_e[e];
            rogers += g.a[slots[e]] * s * r / Interval(6.0);
            quoins += g.quoin[fi][e];
            cos_th[e] = g.a[slots[e]] / kRoot2;
            sin_th[e] = i_sqrt((Interval(2.0) - i_square(g.a[slots[e]])) /
                               Interval(2.0));
        }
        // Flute via the spherical half-lens area (Gauss-Bonnet):
        // pi - A_hat - delta_p cos(theta_p) - delta_q cos(theta_q).
        Interval yp = i_sqrt(x[f.p]), yq = i_sqrt(x[f.q]);
        Interval cos_gamma =
            (x[f.p] + x[f.q] - x[f.opp]) / (Interval(2.0) * yp * yq);
        Interval a_hat = acos_clamped((cos_gamma - cos_th[0] * cos_th[1]) /
                                      (sin_th[0] * sin_th[1]));
        Interval omega =
            i_pi() - a_hat - delta_e[0] * cos_th[0] - delta_e[1] * cos_th[1];
        flutes += kRoot8 / Interval(3.0) * omega;
    }

    Interval cones(0.0), wprime(0.0), wedges(0.0);
    for (int i = 0; i < 3; ++i) {
        Interval one_minus_cos = Interval(1.0) - g.a[i] / kRoot2;
        cones += kRoot8 / Interval(3.0) * g.dih[i] * one_minus_cos;
        Interval under =
            g.a[i] * (Interval(2.0) - i_square(g.a[i])) / Interval(6.0);
        wprime += g.dih[i] * under;
        wedges += (g.dih[i] - delta_sum[i]) * under;
    }

    out.rogers = rogers;
    out.quoins = quoins;
    out.flutes = flutes;
    out.cones = cones;
    out.wprime = wprime;
    out.wedges = wedges;
    out.c = sector - cones + flutes;
    out.v = trunc_volume_half(x);
    return out;
}

Interval dy2_dy1(const Interval& x1, const Interval& x2, const Interval& b) {
    Interval y1 = i_sqrt(x1), y2 = i_sqrt(x2);
    Interval num = y1 * (Interval(16.0) - x2) * (x2 + b - x1);
    Interval den = y2 * (Interval(16.0) - x1) * (x1 + b - x2);
    return -(num / den);
}

Interval quoin_p1(const Interval& x1, const Interval& x2, const Interval& b) {
    return Interval(128.0) * b - Interval(128.0) * x1 - Interval(8.0) * b * x1 +
           Interval(8.0) * i_square(x1) - Interval(128.0) * x2 +
           Interval(32.0) * x1 * x2 + b * x1 * x2 - i_square(x1) * x2 +
           Interval(8.0) * i_square(x2) - x1 * i_square(x2);
}

Interval quoin_p2(const Interval& x1, const Interval& x2, const Interval& b) {
    return Interval(-2048.0) + Interval(192.0) * b + Interval(320.0) * x1 -
           Interval(16.0) * b * x1 - Interval(16.0) * i_square(x1) +
           Interval(320.0) * x2 - Interval(16.0) * b * x2 -
           Interval(32.0) * x1 * x2 + b * x1 * x2 + i_square(x1) * x2 -
           Interval(16.0) * i_square(x2) + x1 * i_square(x2);
}

VerificationReport quoin_monotonicity_check() {
    auto start = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.calc_id = "quoin:monotonicity";

    Interval xmax = i_square(interval_from_decimal("2.51"));
    Interval xmin = Interval(16.0) / xmax;
    Interval b(8.0);

    // Coefficients of b must be positive so b = 8 minimizes p1 and p2.
    auto coef1 = [](const Interval& x1, const Interval& x2) {
        return Interval(128.0) - Interval(8.0) * (x1 + x2) + x1 * x2;
    };
    auto coef2 = [](const Interval& x1, const Interval& x2) {
        return Interval(192.0) - Interval(16.0) * (x1 + x2) + x1 * x2;
    };

    struct Box {
        Interval x1, x2;
        int depth;
    };
    std::vector<Box> stack;
    stack.push_back({Interval(xmin.lo(), xmax.hi()),
                     Interval(xmin.lo(), xmax.hi()), 0});
    bool ok = true;
    while (!stack.empty()) {
        Box bx = stack.back();
        stack.pop_back();
        ++rep.cells_considered;
        rep.max_depth = std::max(rep.max_depth, bx.depth);
        bool all_positive = quoin_p1(bx.x1, bx.x2, b).lo() > 0.0 &&
                            quoin_p2(bx.x1, bx.x2, b).lo() > 0.0 &&
                            coef1(bx.x1, bx.x2).lo() > 0.0 &&
                            coef2(bx.x1, bx.x2).lo() > 0.0;
        if (all_positive) {
            ++rep.leaves_discarded;
            ++rep.discards["positive"];
            continue;
        }
        if (bx.depth >= 40 || rep.cells_considered > 2000000) {
            ok = false;
            ++rep.survivors;
            char buf[160];
            std::snprintf(buf, sizeof buf, "offending cell x1=%s x2=%s",
                          bx.x1.str().c_str(), bx.x2.str().c_str());
            rep.note = buf;
            break;
        }
        ++rep.internal_splits;
        if (bx.x1.width() >= bx.x2.width()) {
            double m = bx.x1.mid();
            stack.push_back({Interval(bx.x1.lo(), m), bx.x2, bx.depth + 1});
            stack.push_back({Interval(m, bx.x1.hi()), bx.x2, bx.depth + 1});
        } else {
            double m = bx.x2.mid();
            stack.push_back({bx.x1, Interval(bx.x2.lo(), m), bx.depth + 1});
            stack.push_back({bx.x1, Interval(m, bx.x2.hi()), bx.depth + 1});
        }
    }
    rep.verified = ok;
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return rep;
}

}  // namespace pentaver

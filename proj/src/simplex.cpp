#include "pentaver/simplex.hpp"

namespace pentaver {

SquaredLengths to_squares(const EdgeLengths& y) {
    SquaredLengths x;
    for (int i = 0; i < 6; ++i) x[i] = i_square(y[i]);
    return x;
}

EdgeLengths to_lengths(const SquaredLengths& x) {
    EdgeLengths y;
    for (int i = 0; i < 6; ++i) y[i] = i_sqrt(x[i]);
    return y;
}

Interval pt_interval() {
    Interval root2 = i_sqrt(Interval(2.0));
    return Interval(4.0) * i_atan(root2 / Interval(5.0)) - i_pi() / Interval(3.0);
}

Interval delta_oct_interval() {
    Interval root2 = i_sqrt(Interval(2.0));
    Interval num = i_pi() - Interval(4.0) * i_atan(root2 / Interval(5.0));
    return num / (Interval(2.0) * root2);
}

Interval delta_boxed(const std::array<Interval, 6>& box) {
    Interval raw = delta_raw_t(box);
    std::array<Interval, 6> mid;
    for (int i = 0; i < 6; ++i) mid[i] = Interval(box[i].mid());
    Interval mv = delta_raw_t(mid);
    for (int i = 0; i < 6; ++i) {
        std::array<Interval, 6> p;
        for (int k = 0; k < 6; ++k) p[k] = box[kDeltaGradPerm[i][k]];
        mv += delta4_t(p) * (box[i] - mid[i]);
    }
    return raw.intersects(mv) ? i_intersect(raw, mv) : raw;
}

Interval delta(const SquaredLengths& x) {
    Interval d = delta_boxed(x.x);
    return {std::max(0.0, d.lo()), std::max(0.0, d.hi())};
}

Interval a_func(const EdgeLengths& y) {
    // a is increasing in y1,y2,y3 and decreasing in y4,y5,y6 on the edge
    // ranges that occur in the calculations, so the extreme values sit at
    // opposite corners of the box.
    std::array<Interval, 6> lo_corner = {y[0].lo(), y[1].lo(), y[2].lo(),
                                         y[3].hi(), y[4].hi(), y[5].hi()};
    std::array<Interval, 6> hi_corner = {y[0].hi(), y[1].hi(), y[2].hi(),
                                         y[3].lo(), y[4].lo(), y[5].lo()};
    double lo = a_func_t(lo_corner).lo();
    double hi = a_func_t(hi_corner).hi();
    if (lo < 0.0) lo = 0.0;  // a > 0 for any simplex
    if (hi < lo) hi = lo;
    return {lo, hi};
}

Interval volume(const SquaredLengths& x) {
    return i_sqrt(delta(x)) / Interval(12.0);
}

Interval eta_sq_x(const Interval& x1, const Interval& x2, const Interval& x3) {
    Interval u = u_face_t(x1, x2, x3);
    if (u.lo() <= 0.0)
        throw DegenerateFace("eta_sq: face area enclosure touches zero");
    return x1 * x2 * x3 / u;
}

Interval eta_sq(const Interval& y1, const Interval& y2, const Interval& y3) {
    return eta_sq_x(i_square(y1), i_square(y2), i_square(y3));
}

namespace {

Interval sol_xy(const SquaredLengths& x, const EdgeLengths& y) {
    Interval sd = i_sqrt(delta(x));
    Interval a = a_func(y);
    Interval q = sd / (Interval(2.0) * a);
    Interval s = i_atan(q);
    return s + s;
}

}  // namespace

Interval sol(const EdgeLengths& y) { return sol_xy(to_squares(y), y); }

Interval sol_x(const SquaredLengths& x) { return sol_xy(x, to_lengths(x)); }

Interval dih_x(const SquaredLengths& x) {
    Interval den = i_sqrt(Interval(4.0) * x[0] * delta(x));
    Interval q = delta4_t(x.x) / den;
    return i_pi() / Interval(2.0) - i_atan(q);
}

Interval dih(const EdgeLengths& y) { return dih_x(to_squares(y)); }

Interval dih_edge_x(const SquaredLengths& x, int edge) {
    SquaredLengths p;
    for (int i = 0; i < 6; ++i) p[i] = x[kEdgeFirst[edge][i]];
    return dih_x(p);
}

Interval vor_volume_analytic_x(const SquaredLengths& x) {
    return vor_volume_t(x.x);
}

Interval vor_volume_analytic(const EdgeLengths& y) {
    return vor_volume_t(to_squares(y).x);
}

Interval gma_x(const SquaredLengths& x) {
    Interval sd = i_sqrt(delta(x));
    Interval vol = sd / Interval(12.0);
    EdgeLengths y = to_lengths(x);
    Interval sols(0.0);
    for (const auto& perm : kVertexLabelings) {
        EdgeLengths py;
        for (int i = 0; i < 6; ++i) py[i] = y[perm[i]];
        Interval a = a_func(py);
        Interval s = i_atan(sd / (Interval(2.0) * a));
        sols += s + s;
    }
    return sols / Interval(3.0) - delta_oct_interval() * vol;
}

Interval gma(const EdgeLengths& y) { return gma_x(to_squares(y)); }

Interval vor_score_x(const SquaredLengths& x) {
    Interval sd = i_sqrt(delta(x));
    Interval v = vor_volume_from_parts(x.x, sd);
    EdgeLengths y = to_lengths(x);
    Interval a = a_func(y);
    Interval s = i_atan(sd / (Interval(2.0) * a));
    return Interval(4.0) * ((s + s) / Interval(3.0) - delta_oct_interval() * v);
}

Interval vor_score(const EdgeLengths& y) { return vor_score_x(to_squares(y)); }

Interval octavor_x(const SquaredLengths& x) {
    Interval sd = i_sqrt(delta(x));
    EdgeLengths y = to_lengths(x);
    SquaredLengths sw;
    EdgeLengths yw;
    for (int i = 0; i < 6; ++i) {
        sw[i] = x[kOctavorSwap[i]];
        yw[i] = y[kOctavorSwap[i]];
    }
    Interval two_a1 = Interval(2.0) * a_func(y);
    Interval two_a2 = Interval(2.0) * a_func(yw);
    Interval s1 = i_atan(sd / two_a1);
    Interval s2 = i_atan(sd / two_a2);
    Interval sols = (s1 + s1) + (s2 + s2);
    Interval vols = vor_volume_from_parts(x.x, sd) + vor_volume_from_parts(sw.x, sd);
    return Interval(2.0) * (sols / Interval(3.0) - delta_oct_interval() * vols);
}

Interval octavor(const EdgeLengths& y) { return octavor_x(to_squares(y)); }

Interval circumradius_sq(const SquaredLengths& x) {
    Interval d = delta(x);
    if (d.lo() <= 0.0)
        throw DegenerateFace("circumradius_sq: delta enclosure touches zero");
    return circumradius_sq_t(x.x);
}

ScoreKindSet score_kind_for(const EdgeLengths& y, SimplexShape shape) {
    ScoreKindSet out;
    if (shape == SimplexShape::QrTet) {
        Interval thresh = i_square(interval_from_decimal("1.41"));
        Interval r2 = circumradius_sq(to_squares(y));
        if (r2.hi() < thresh.lo()) {
            out.compression = true;
        } else if (r2.lo() >= thresh.hi()) {
            out.voronoi = true;
        } else {
            out.compression = out.voronoi = true;
        }
        return out;
    }
    // Quarters: rule depends on the circumradii of the two faces adjacent to
    // the diagonal (y6 for flat, y1 for upright).
    Interval e1, e2;
    if (shape == SimplexShape::FlatQuarter) {
        e1 = eta_sq(y[0], y[1], y[5]);
        e2 = eta_sq(y[3], y[4], y[5]);
    } else {
        e1 = eta_sq(y[0], y[1], y[5]);
        e2 = eta_sq(y[0], y[2], y[4]);
    }
    if (e1.hi() < 2.0 && e2.hi() < 2.0) {
        out.compression = true;
    } else if (e1.lo() >= 2.0 || e2.lo() >= 2.0) {
        out.voronoi = true;
    } else {
        out.compression = out.voronoi = true;
    }
    return out;
}

}  // namespace pentaver

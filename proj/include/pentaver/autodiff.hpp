#pragma once

#include <array>

#include "pentaver/scalar.hpp"

namespace pentaver {

// First-order forward jet over intervals: value plus an enclosure of the six
// partial derivatives.  Plugs into the templated geometry formulas.
struct D1 {
    Interval v;
    std::array<Interval, 6> g;

    D1() : v(0.0) { g.fill(Interval(0.0)); }
    explicit D1(const Interval& val) : v(val) { g.fill(Interval(0.0)); }

    static D1 variable(const Interval& val, int index) {
        D1 d(val);
        d.g[index] = Interval(1.0);
        return d;
    }
};

inline D1 operator+(const D1& a, const D1& b) {
    D1 r(a.v + b.v);
    for (int i = 0; i < 6; ++i) r.g[i] = a.g[i] + b.g[i];
    return r;
}

inline D1 operator-(const D1& a, const D1& b) {
    D1 r(a.v - b.v);
    for (int i = 0; i < 6; ++i) r.g[i] = a.g[i] - b.g[i];
    return r;
}

inline D1 operator-(const D1& a) {
    D1 r(-a.v);
    for (int i = 0; i < 6; ++i) r.g[i] = -a.g[i];
    return r;
}

inline D1 operator*(const D1& a, const D1& b) {
    D1 r(a.v * b.v);
    for (int i = 0; i < 6; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
    return r;
}

inline D1 operator/(const D1& a, const D1& b) {
    Interval q = a.v / b.v;
    D1 r(q);
    for (int i = 0; i < 6; ++i) r.g[i] = (a.g[i] - q * b.g[i]) / b.v;
    return r;
}

inline D1 sqrt(const D1& a) {
    Interval s = i_sqrt(a.v);
    if (s.lo() <= 0.0)
        throw DivisorContainsZero("D1 sqrt: derivative unbounded at zero");
    D1 r(s);
    Interval inv = Interval(0.5) / s;
    for (int i = 0; i < 6; ++i) r.g[i] = a.g[i] * inv;
    return r;
}

inline D1 sqr(const D1& a) {
    D1 r(i_square(a.v));
    Interval two_v = Interval(2.0) * a.v;
    for (int i = 0; i < 6; ++i) r.g[i] = a.g[i] * two_v;
    return r;
}

inline D1 atan(const D1& a) {
    D1 r(i_atan(a.v));
    Interval den = Interval(1.0) + i_square(a.v);
    for (int i = 0; i < 6; ++i) r.g[i] = a.g[i] / den;
    return r;
}

inline D1 acos(const D1& a) {
    Interval w2 = Interval(1.0) - i_square(a.v);
    if (w2.lo() <= 0.0)
        throw DivisorContainsZero("D1 acos: derivative unbounded at +-1");
    D1 r(i_acos(a.v));
    Interval d = -(Interval(1.0) / i_sqrt(w2));
    for (int i = 0; i < 6; ++i) r.g[i] = a.g[i] * d;
    return r;
}

template <>
struct ScalarFrom<D1> {
    static D1 constant(const Interval& v) { return D1(v); }
};

inline Interval value_of(const D1& v) { return v.v; }

// Second-order forward jet: value, gradient, and the symmetric Hessian, all
// interval-valued.  Hessian stored as the upper triangle (21 entries).
struct D2 {
    Interval v;
    std::array<Interval, 6> g;
    std::array<Interval, 21> h;

    D2() : v(0.0) {
        g.fill(Interval(0.0));
        h.fill(Interval(0.0));
    }
    explicit D2(const Interval& val) : v(val) {
        g.fill(Interval(0.0));
        h.fill(Interval(0.0));
    }

    static D2 variable(const Interval& val, int index) {
        D2 d(val);
        d.g[index] = Interval(1.0);
        return d;
    }

    static int idx(int i, int j) {
        if (i > j) std::swap(i, j);
        return i * 6 - i * (i + 1) / 2 + j;
    }
};

inline D2 operator+(const D2& a, const D2& b) {
    D2 r(a.v + b.v);
    for (int i = 0; i < 6; ++i) r.g[i] = a.g[i] + b.g[i];
    for (int k = 0; k < 21; ++k) r.h[k] = a.h[k] + b.h[k];
    return r;
}

inline D2 operator-(const D2& a, const D2& b) {
    D2 r(a.v - b.v);
    for (int i = 0; i < 6; ++i) r.g[i] = a.g[i] - b.g[i];
    for (int k = 0; k < 21; ++k) r.h[k] = a.h[k] - b.h[k];
    return r;
}

inline D2 operator-(const D2& a) {
    D2 r(-a.v);
    for (int i = 0; i < 6; ++i) r.g[i] = -a.g[i];
    for (int k = 0; k < 21; ++k) r.h[k] = -a.h[k];
    return r;
}

inline D2 operator*(const D2& a, const D2& b) {
    D2 r(a.v * b.v);
    for (int i = 0; i < 6; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
    for (int i = 0; i < 6; ++i)
        for (int j = i; j < 6; ++j) {
            int k = D2::idx(i, j);
            r.h[k] = a.h[k] * b.v + a.g[i] * b.g[j] + a.g[j] * b.g[i] +
                     a.v * b.h[k];
        }
    return r;
}

// Chain rule for a scalar function f applied to jet a:
// H_ij = f'(a) a_ij + f''(a) a_i a_j.
inline D2 chain(const D2& a, const Interval& f, const Interval& fp,
                const Interval& fpp) {
    D2 r(f);
    for (int i = 0; i < 6; ++i) r.g[i] = fp * a.g[i];
    for (int i = 0; i < 6; ++i)
        for (int j = i; j < 6; ++j) {
            int k = D2::idx(i, j);
            r.h[k] = fp * a.h[k] + fpp * a.g[i] * a.g[j];
        }
    return r;
}

inline D2 operator/(const D2& a, const D2& b) {
    // a / b = a * (1/b)
    Interval inv = Interval(1.0) / b.v;
    Interval inv2 = i_square(inv);
    D2 rb = chain(b, inv, -inv2, Interval(2.0) * inv2 * inv);
    return a * rb;
}

inline D2 sqrt(const D2& a) {
    Interval s = i_sqrt(a.v);
    if (s.lo() <= 0.0)
        throw DivisorContainsZero("D2 sqrt: derivative unbounded at zero");
    Interval fp = Interval(0.5) / s;
    Interval fpp = -(Interval(0.25) / (s * a.v));
    return chain(a, s, fp, fpp);
}

inline D2 sqr(const D2& a) {
    return chain(a, i_square(a.v), Interval(2.0) * a.v, Interval(2.0));
}

inline D2 atan(const D2& a) {
    Interval den = Interval(1.0) + i_square(a.v);
    Interval fp = Interval(1.0) / den;
    Interval fpp = Interval(-2.0) * a.v / i_square(den);
    return chain(a, i_atan(a.v), fp, fpp);
}

inline D2 acos(const D2& a) {
    Interval w2 = Interval(1.0) - i_square(a.v);
    if (w2.lo() <= 0.0)
        throw DivisorContainsZero("D2 acos: derivative unbounded at +-1");
    Interval w = i_sqrt(w2);
    Interval fp = -(Interval(1.0) / w);
    Interval fpp = -(a.v / (w2 * w));
    return chain(a, i_acos(a.v), fp, fpp);
}

template <>
struct ScalarFrom<D2> {
    static D2 constant(const Interval& v) { return D2(v); }
};

inline Interval value_of(const D2& v) { return v.v; }

}  // namespace pentaver

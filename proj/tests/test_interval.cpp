#include <doctest.h>

#include <cmath>
#include <quadmath.h>
#include <random>

#include "pentaver/interval.hpp"

using namespace pentaver;

namespace {

// Reference arithmetic in 113-bit precision for the containment oracle.
__float128 q_op(int op, __float128 a, __float128 b) {
    switch (op) {
        case 0: return a + b;
        case 1: return a - b;
        case 2: return a * b;
        case 3: return a / b;
        case 4: return sqrtq(a);
        default: return atanq(a);
    }
}

bool q_inside(__float128 v, const Interval& r) {
    return static_cast<__float128>(r.lo()) <= v &&
           v <= static_cast<__float128>(r.hi());
}

double pick_in(std::mt19937_64& rng, const Interval& iv) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return iv.lo() + u(rng) * (iv.hi() - iv.lo());
}

}  // namespace

TEST_CASE("addition basics") {
    Interval a(1.0, 2.0), b(3.0, 4.0);
    Interval c = a + b;
    CHECK(c.lo() == 4.0);
    CHECK(c.hi() == 6.0);

    Interval z(0.0);
    Interval d = z + Interval(-1.5, 2.5);
    CHECK(d.lo() == -1.5);
    CHECK(d.hi() == 2.5);

    // 0.1 + 0.2 must strictly contain the real 0.3.
    Interval e = Interval(0.1) + Interval(0.2);
    CHECK(e.width() > 0.0);
    __float128 exact = strtoflt128("0.1", nullptr) + strtoflt128("0.2", nullptr);
    CHECK(q_inside(exact, e));
}

TEST_CASE("subtraction basics") {
    Interval c = Interval(4.0, 6.0) - Interval(3.0, 4.0);
    CHECK(c.lo() == 0.0);
    CHECK(c.hi() == 3.0);

    Interval a(1.0, 2.0);
    Interval d = a - a;  // dependency effect: contains 0, generally not [0,0]
    CHECK(d.contains(0.0));
    CHECK(d.lo() <= -1.0);
    CHECK(d.hi() >= 1.0);

    double tiny = std::ldexp(1.0, -60);
    Interval e = Interval(1.0) - Interval(tiny);
    __float128 exact = 1.0q - static_cast<__float128>(tiny);
    CHECK(q_inside(exact, e));
    CHECK(e.lo() < e.hi());  // 1 - 2^-60 is not representable
}

TEST_CASE("multiplication basics") {
    Interval c = Interval(-1.0, 2.0) * Interval(3.0, 4.0);
    CHECK(c.lo() == -4.0);
    CHECK(c.hi() == 8.0);

    Interval z = Interval(0.0) * Interval::entire();
    CHECK(z.lo() == 0.0);
    CHECK(z.hi() == 0.0);

    Interval e = Interval(2.0) * Interval(3.0);
    CHECK(e.lo() == 6.0);
    CHECK(e.hi() == 6.0);
}

TEST_CASE("division basics") {
    Interval c = Interval(4.0, 8.0) / Interval(2.0, 4.0);
    CHECK(c.lo() == 1.0);
    CHECK(c.hi() == 4.0);

    Interval one = Interval(1.0) / Interval(1.0);
    CHECK(one.is_point());
    CHECK(one.lo() == 1.0);

    CHECK_THROWS_AS(Interval(-4.0, 8.0) / Interval(-1.0, 2.0), DivisorContainsZero);
}

TEST_CASE("sqrt basics") {
    Interval c = i_sqrt(Interval(4.0, 9.0));
    CHECK(c.lo() == 2.0);
    CHECK(c.hi() == 3.0);

    Interval d = i_sqrt(Interval(-1.0, 4.0));  // clamping branch
    CHECK(d.lo() == 0.0);
    CHECK(d.hi() == 2.0);

    Interval e = i_sqrt(Interval(2.0));
    __float128 exact = sqrtq(2.0q);
    CHECK(q_inside(exact, e));
    CHECK(e.width() <= 2 * std::ldexp(1.0, -52));

    CHECK_THROWS_AS(i_sqrt(Interval(-2.0, -1.0)), WhollyNegative);
}

TEST_CASE("atan basics") {
    Interval a = i_atan(Interval(0.0));
    CHECK(a.contains(0.0));
    CHECK(a.width() <= 2 * atan_padding() + 4 * std::ldexp(1.0, -52));
    CHECK(a.width() >= 2 * atan_padding());

    Interval b = i_atan(Interval(1.0));
    __float128 quarter_pi = atanq(1.0q);
    CHECK(q_inside(quarter_pi, b));

    Interval c = i_atan(Interval(0.25, 1.75));
    CHECK(c.width() >= std::atan(1.75) - std::atan(0.25));
}

TEST_CASE("NaN is a hard fault") {
    double nan_v = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS((void)Interval{nan_v}, NanFault);
    CHECK_THROWS_AS((void)Interval(nan_v, 1.0), NanFault);
    CHECK_THROWS_AS((void)Interval(1.0, nan_v), NanFault);
    double inf_v = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(Interval{inf_v} + Interval{-inf_v}, NanFault);
}

TEST_CASE("reversed endpoints rejected") {
    CHECK_THROWS_AS(Interval(2.0, 1.0), std::invalid_argument);
}

TEST_CASE("containment: 1e5 random op triples vs 128-bit oracle") {
    std::mt19937_64 rng(20260810u);
    std::uniform_real_distribution<double> mag(-50.0, 50.0);
    std::uniform_real_distribution<double> w(0.0, 3.0);
    int checked = 0;
    while (checked < 100000) {
        int op = static_cast<int>(rng() % 6);
        double alo = mag(rng);
        Interval a(alo, alo + w(rng));
        double blo = mag(rng);
        Interval b(blo, blo + w(rng));
        if (op == 3 && b.contains(0.0)) continue;
        if (op == 4 && a.hi() < 0.0) continue;
        double pa = pick_in(rng, a);
        double pb = pick_in(rng, b);
        Interval r = op == 0   ? a + b
                     : op == 1 ? a - b
                     : op == 2 ? a * b
                     : op == 3 ? a / b
                     : op == 4 ? i_sqrt(a)
                               : i_atan(a);
        // The sqrt clamp maps the negative part of the operand to 0.
        __float128 exact = (op == 4 && pa < 0.0) ? 0.0q : q_op(op, pa, pb);
        REQUIRE(q_inside(exact, r));
        ++checked;
    }
}

TEST_CASE("inclusion isotonicity on random nested boxes") {
    std::mt19937_64 rng(7u);
    std::uniform_real_distribution<double> mag(-20.0, 20.0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int it = 0; it < 20000; ++it) {
        int op = static_cast<int>(rng() % 6);
        double alo = mag(rng), aw = 2.0 * u01(rng);
        Interval a(alo, alo + aw);
        double s = u01(rng) * aw, e = s + u01(rng) * (aw - s);
        Interval a2(alo + s, alo + e);
        double blo = mag(rng), bw = 2.0 * u01(rng);
        Interval b(blo, blo + bw);
        double s2 = u01(rng) * bw, e2 = s2 + u01(rng) * (bw - s2);
        Interval b2(blo + s2, blo + e2);
        if (op == 3 && b.contains(0.0)) continue;
        if (op == 4 && (a.hi() < 0.0 || a2.hi() < 0.0)) continue;
        auto apply = [&](const Interval& x, const Interval& y) {
            switch (op) {
                case 0: return x + y;
                case 1: return x - y;
                case 2: return x * y;
                case 3: return x / y;
                case 4: return i_sqrt(x);
                default: return i_atan(x);
            }
        };
        Interval big = apply(a, b);
        Interval small = apply(a2, b2);
        REQUIRE(big.contains(small));
    }
}

TEST_CASE("degenerate-input exactness for representable integers") {
    std::mt19937_64 rng(99u);
    std::uniform_int_distribution<long long> d(-(1ll << 25), 1ll << 25);
    for (int it = 0; it < 5000; ++it) {
        double x = static_cast<double>(d(rng));
        double y = static_cast<double>(d(rng));
        Interval a(x), b(y);
        Interval s = a + b;
        CHECK(s.is_point());
        CHECK(s.lo() == x + y);
        Interval m = a * b;  // products stay within 2^50
        CHECK(m.is_point());
        Interval sub = a - b;
        CHECK(sub.is_point());
    }
    Interval big(static_cast<double>(1ll << 50));
    CHECK((big + Interval(1.0)).is_point());
}

TEST_CASE("decimal parsing") {
    Interval a = interval_from_decimal("0.49246");
    __float128 exact = strtoflt128("0.49246", nullptr);
    CHECK(q_inside(exact, a));
    CHECK(a.width() < 1e-15);

    Interval b = interval_from_decimal("12");
    CHECK(b.is_point());
    CHECK(b.lo() == 12.0);

    Interval c = interval_from_decimal("-1.04");
    CHECK(q_inside(strtoflt128("-1.04", nullptr), c));

    Interval d = interval_from_decimal("0.3860658808124052");
    CHECK(q_inside(strtoflt128("0.3860658808124052", nullptr), d));
    CHECK(d.width() < 1e-15);

    Interval q = interval_from_decimal("0.25");
    CHECK(q.is_point());  // exactly representable

    CHECK_THROWS(interval_from_decimal("1.2e3"));
    CHECK_THROWS(interval_from_decimal(""));
}

TEST_CASE("pi enclosure") {
    Interval p = i_pi();
    CHECK(q_inside(M_PIq, p));
    CHECK(p.width() <= std::ldexp(1.0, -51));
}

TEST_CASE("acos") {
    Interval r = i_acos(Interval(0.5));
    CHECK(q_inside(acosq(0.5q), r));
    CHECK(r.width() < 1e-13);
    Interval s = i_acos(Interval(-0.3, 0.7));
    CHECK(q_inside(acosq(-0.3q), s));
    CHECK(q_inside(acosq(0.7q), s));
    Interval t = i_acos(Interval(1.0));
    CHECK(t.contains(0.0));
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "pentaver/taylor.hpp"

using namespace pentaver;

namespace {

std::array<Interval, 6> qr_domain_x() {
    Interval y(2.0, 2.51);
    Interval x = i_square(y);
    return {x, x, x, x, x, x};
}

std::array<Interval, 6> quarter_domain_x() {
    Interval shorty = i_square(Interval(2.0, 2.51));
    Interval diag(i_square(Interval(2.51)).lo(), 8.0);
    return {diag, shorty, shorty, shorty, shorty, shorty};
}

std::array<Interval, 6> point_cell(const std::array<long double, 6>& y) {
    std::array<Interval, 6> x;
    for (int i = 0; i < 6; ++i)
        x[i] = i_square(Interval(static_cast<double>(y[i])));
    return x;
}

long double ref_eval(FnId fn, const std::array<long double, 6>& x) {
    return eval_fn<long double>(fn, x);
}

}  // namespace

TEST_CASE("jet plumbing: constants have zero derivatives") {
    D1 c = ScalarFrom<D1>::constant(interval_from_decimal("2.2265"));
    for (int i = 0; i < 6; ++i) CHECK(c.g[i].is_point());
    D2 c2 = ScalarFrom<D2>::constant(Interval(1.5));
    for (int k = 0; k < 21; ++k) CHECK(c2.h[k].is_point());

    // gradient of the coordinate function
    auto g = gradient_enclosure(FnId::X1, qr_domain_x());
    CHECK(g[0].contains(1.0));
    CHECK(g[0].width() < 1e-15);
    for (int i = 1; i < 6; ++i) CHECK(g[i].is_point());
}

TEST_CASE("gradients match finite differences at interior points") {
    std::mt19937_64 rng(51u);
    double lo[6] = {2.05, 2.05, 2.05, 2.05, 2.05, 2.05};
    double hi[6] = {2.45, 2.45, 2.45, 2.45, 2.45, 2.45};
    for (FnId fn : {FnId::Sol, FnId::Dih, FnId::GmaVolume, FnId::VorVolume,
                    FnId::Gma, FnId::Vor}) {
        for (int it = 0; it < 40; ++it) {
            auto y = oracle::random_lengths(rng, lo, hi);
            std::array<long double, 6> x;
            for (int i = 0; i < 6; ++i) x[i] = y[i] * y[i];
            auto cell = point_cell(y);
            auto g = gradient_enclosure(fn, cell);
            for (int i = 0; i < 6; ++i) {
                long double h = 1e-6L;
                auto xp = x, xm = x;
                xp[i] += h;
                xm[i] -= h;
                long double fd = (ref_eval(fn, xp) - ref_eval(fn, xm)) / (2 * h);
                CHECK(std::abs(g[i].mid() - static_cast<double>(fd)) < 1e-7);
            }
        }
    }
}

TEST_CASE("vor partials are negative on the corner cell") {
    // q:partials: d vor / d y_i < 0 for i = 1..5 on
    // C = [2, 2+0.51/16]^5 [2 sqrt(2) - (2 sqrt(2) - 2.51)/16, 2 sqrt(2)].
    // The full conjunction over C is an engine job (it subdivides); here the
    // oracle samples the sign and the Taylor-form gradient resolves it on a
    // refined subcell, corner included.
    double c5 = 2.0 + 0.51 / 16.0;
    double root8 = std::sqrt(8.0);
    double c6lo = root8 - (root8 - 2.51) / 16.0;
    Interval shorty(2.0, c5), diag(c6lo, root8);
    std::array<Interval, 6> cell = {
        i_square(shorty), i_square(shorty), i_square(shorty),
        i_square(shorty), i_square(shorty), i_square(diag)};

    std::mt19937_64 rng(45u);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int it = 0; it < 200; ++it) {
        std::array<long double, 6> x;
        for (int i = 0; i < 6; ++i)
            x[i] = cell[i].lo() + u(rng) * cell[i].width();
        for (int i = 0; i < 5; ++i) {
            auto xp = x, xm = x;
            long double h = 1e-7L;
            xp[i] += h;
            xm[i] -= h;
            long double fd = (eval_fn<long double>(FnId::Vor, xp) -
                              eval_fn<long double>(FnId::Vor, xm)) /
                             (2 * h);
            REQUIRE(fd < 0.0L);
        }
    }

    // local second-partial table over C, then the Taylor-form gradient on
    // the corner-most subcell after three halvings per coordinate
    SecondPartialTable local = build_second_partial_table(FnId::Vor, cell, 2);
    std::array<Interval, 6> sub;
    for (int i = 0; i < 5; ++i)
        sub[i] = Interval(cell[i].lo(), cell[i].lo() + cell[i].width() / 8);
    sub[5] = Interval(cell[5].hi() - cell[5].width() / 8, cell[5].hi());
    auto g = gradient_enclosure_taylor(FnId::Vor, sub, local.magnitude());
    for (int i = 0; i < 5; ++i) CHECK(g[i].hi() < 0.0);
}

TEST_CASE("second partial tables: build, serialize, cache") {
    auto dom = qr_domain_x();
    SecondPartialTable t = build_second_partial_table(FnId::Sol, dom, 2, true);
    SecondPartialTable ts = build_second_partial_table_serial(FnId::Sol, dom, 2);
    CHECK(t.bound.lo() == ts.bound.lo());
    CHECK(t.bound.hi() == ts.bound.hi());

    std::string text = table_to_text(t);
    auto back = table_from_text(text);
    REQUIRE(back.has_value());
    CHECK(back->bound.lo() == t.bound.lo());
    CHECK(back->bound.hi() == t.bound.hi());
    CHECK(back->subdivisions == 2);

    std::string dir = "/tmp/pentaver_table_cache_test";
    SecondPartialTable c1 = table_cached(FnId::Sol, dom, 2, dir, false, true);
    SecondPartialTable c2 = table_cached(FnId::Sol, dom, 2, dir, true, true);
    CHECK(c1.bound.lo() == c2.bound.lo());
    CHECK(c1.bound.hi() == c2.bound.hi());
}

TEST_CASE("sampled second partials lie inside the coarse tables") {
    std::mt19937_64 rng(61u);
    auto dom = qr_domain_x();
    SecondPartialTable t = build_second_partial_table(FnId::Sol, dom, 2, true);
    double lo[6] = {2.05, 2.05, 2.05, 2.05, 2.05, 2.05};
    double hi[6] = {2.45, 2.45, 2.45, 2.45, 2.45, 2.45};
    for (int it = 0; it < 60; ++it) {
        auto y = oracle::random_lengths(rng, lo, hi);
        std::array<long double, 6> x;
        for (int i = 0; i < 6; ++i) x[i] = y[i] * y[i];
        long double h = 1e-4L;
        for (int i = 0; i < 6; ++i)
            for (int j = i; j < 6; ++j) {
                auto xa = x, xb = x, xc = x, xd = x;
                xa[i] += h; xa[j] += h;
                xb[i] += h; xb[j] -= h;
                xc[i] -= h; xc[j] += h;
                xd[i] -= h; xd[j] -= h;
                long double fd = (ref_eval(FnId::Sol, xa) - ref_eval(FnId::Sol, xb) -
                                  ref_eval(FnId::Sol, xc) + ref_eval(FnId::Sol, xd)) /
                                 (4 * h * h);
                CHECK(t.bound.lo() - 1e-5 <= static_cast<double>(fd));
                CHECK(static_cast<double>(fd) <= t.bound.hi() + 1e-5);
            }
    }
}

TEST_CASE("taylor upper bound soundness") {
    std::mt19937_64 rng(71u);
    auto dom = qr_domain_x();
    SecondPartialTable tg = build_second_partial_table(FnId::Gma, dom, 2, true);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int trials = 0;
    while (trials < 1000) {
        // random small cell inside the q.r. domain
        std::array<Interval, 6> cell;
        for (int i = 0; i < 6; ++i) {
            double w = 0.02 + 0.1 * u(rng);
            double lo = 4.0 + u(rng) * (6.28 - w - 4.0);
            cell[i] = Interval(lo, lo + w);
        }
        double ub = taylor_upper_bound(FnId::Gma, cell, tg.magnitude());
        // sample interior points
        for (int s = 0; s < 10; ++s) {
            std::array<long double, 6> x;
            for (int i = 0; i < 6; ++i)
                x[i] = cell[i].lo() + u(rng) * cell[i].width();
            long double f = ref_eval(FnId::Gma, x);
            REQUIRE(static_cast<double>(f) <= ub + 1e-13);
        }
        ++trials;
    }
}

TEST_CASE("taylor bound on a zero-width cell equals the point value") {
    std::array<Interval, 6> cell = {Interval(4.41), Interval(4.52),
                                    Interval(4.63), Interval(4.74),
                                    Interval(4.85), Interval(4.96)};
    double ub = taylor_upper_bound(FnId::Sol, cell, 10.0);
    Interval direct = eval_fn<Interval>(FnId::Sol, {cell[0], cell[1], cell[2],
                                                    cell[3], cell[4], cell[5]});
    CHECK(ub <= direct.hi() + 1e-14);
    CHECK(ub >= direct.lo() - 1e-14);
}

TEST_CASE("taylor beats direct interval evaluation on most small cells") {
    std::mt19937_64 rng(81u);
    auto dom = quarter_domain_x();
    SecondPartialTable tq = build_second_partial_table(FnId::Gma, dom, 4, true);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int better = 0, total = 0;
    while (total < 200) {
        std::array<Interval, 6> cell;
        for (int i = 0; i < 6; ++i) {
            double axis_lo = dom[i].lo(), axis_hi = dom[i].hi();
            double w = 0.004 + 0.016 * u(rng);
            double lo = axis_lo + u(rng) * (axis_hi - axis_lo - w);
            cell[i] = Interval(lo, lo + w);
        }
        try {
            double tb = taylor_upper_bound(FnId::Gma, cell, tq.magnitude());
            double db = eval_fn<Interval>(
                            FnId::Gma, {cell[0], cell[1], cell[2], cell[3],
                                        cell[4], cell[5]})
                            .hi();
            if (tb <= db) ++better;
            ++total;
        } catch (const EvaluationTooCoarse&) {
            continue;
        }
    }
    CHECK(better * 10 >= total * 9);  // at least 90%
}

TEST_CASE("monotone refinement") {
    auto dom = qr_domain_x();
    SecondPartialTable t = build_second_partial_table(FnId::Sol, dom, 2, true);
    std::mt19937_64 rng(91u);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int it = 0; it < 100; ++it) {
        std::array<Interval, 6> cell;
        for (int i = 0; i < 6; ++i) {
            double w = 0.05 + 0.2 * u(rng);
            double lo = 4.0 + u(rng) * (6.25 - w - 4.0);
            cell[i] = Interval(lo, lo + w);
        }
        double parent = taylor_upper_bound(FnId::Sol, cell, t.magnitude());
        int widest = 0;
        for (int i = 1; i < 6; ++i)
            if (cell[i].width() > cell[widest].width()) widest = i;
        auto child = cell;
        child[widest] = Interval(cell[widest].lo(), cell[widest].mid());
        double cb = taylor_upper_bound(FnId::Sol, child, t.magnitude());
        CHECK(cb <= parent + 1e-12);
        child[widest] = Interval(cell[widest].mid(), cell[widest].hi());
        cb = taylor_upper_bound(FnId::Sol, child, t.magnitude());
        CHECK(cb <= parent + 1e-12);
    }
}

TEST_CASE("gradient enclosure through the table") {
    auto dom = qr_domain_x();
    SecondPartialTable t = build_second_partial_table(FnId::Sol, dom, 2, true);
    std::array<Interval, 6> cell;
    for (int i = 0; i < 6; ++i) cell[i] = Interval(4.5, 4.6);
    auto gt = gradient_enclosure_taylor(FnId::Sol, cell, t.magnitude());
    auto gd = gradient_enclosure(FnId::Sol, cell);
    // both enclose the true gradient at the midpoint
    std::array<long double, 6> x;
    for (int i = 0; i < 6; ++i) x[i] = cell[i].mid();
    for (int i = 0; i < 6; ++i) {
        long double h = 1e-6L;
        auto xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        long double fd =
            (ref_eval(FnId::Sol, xp) - ref_eval(FnId::Sol, xm)) / (2 * h);
        CHECK(gt[i].lo() - 1e-7 <= static_cast<double>(fd));
        CHECK(static_cast<double>(fd) <= gt[i].hi() + 1e-7);
        CHECK(gd[i].lo() - 1e-7 <= static_cast<double>(fd));
        CHECK(static_cast<double>(fd) <= gd[i].hi() + 1e-7);
    }
}

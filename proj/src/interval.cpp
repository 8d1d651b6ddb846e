#include "pentaver/interval.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>

namespace pentaver {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMax = std::numeric_limits<double>::max();
const double kAtanErr = std::ldexp(1.0, -49);

// Below this magnitude the fma residual of a product/quotient may underflow
// and lose its sign; widen unconditionally instead.
constexpr double kTiny = 0x1p-1000;

double next_down(double v) {
    if (v == -kInf) return v;
    return std::nextafter(v, -kInf);
}

double next_up(double v) {
    if (v == kInf) return v;
    return std::nextafter(v, kInf);
}

// Lower bound for a sum: z = fl(a+b) plus the exact two-sum residual sign.
double add_down(double a, double b) {
    double z = a + b;
    if (std::isnan(z)) throw NanFault("interval add: inf - inf");
    if (!std::isfinite(z)) return z == kInf ? kMax : z;
    if (!std::isfinite(a) || !std::isfinite(b)) return z;
    double bv = z - a;
    double e = (a - (z - bv)) + (b - bv);  // exact: a + b == z + e
    return e < 0.0 ? next_down(z) : z;
}

double add_up(double a, double b) {
    double z = a + b;
    if (std::isnan(z)) throw NanFault("interval add: inf - inf");
    if (!std::isfinite(z)) return z == -kInf ? -kMax : z;
    if (!std::isfinite(a) || !std::isfinite(b)) return z;
    double bv = z - a;
    double e = (a - (z - bv)) + (b - bv);
    return e > 0.0 ? next_up(z) : z;
}

double sub_down(double a, double b) { return add_down(a, -b); }
double sub_up(double a, double b) { return add_up(a, -b); }

double mul_down(double a, double b) {
    double z = a * b;
    if (std::isnan(z)) throw NanFault("interval mul: 0 * inf");
    if (!std::isfinite(z)) return z == kInf ? kMax : z;
    if (!std::isfinite(a) || !std::isfinite(b)) return z;
    if (z != 0.0 && std::abs(z) < kTiny) return next_down(z);
    double e = std::fma(a, b, -z);  // exact residual: a*b == z + e
    return e < 0.0 ? next_down(z) : z;
}

double mul_up(double a, double b) {
    double z = a * b;
    if (std::isnan(z)) throw NanFault("interval mul: 0 * inf");
    if (!std::isfinite(z)) return z == -kInf ? -kMax : z;
    if (!std::isfinite(a) || !std::isfinite(b)) return z;
    if (z != 0.0 && std::abs(z) < kTiny) return next_up(z);
    double e = std::fma(a, b, -z);
    return e > 0.0 ? next_up(z) : z;
}

// q = fl(a/b); z*b - a computed exactly by fma gives sign(z - a/b) after
// flipping for the divisor sign.
double div_down(double a, double b) {
    double z = a / b;
    if (std::isnan(z)) throw NanFault("interval div: nan quotient");
    if (!std::isfinite(z)) return z == kInf ? kMax : z;
    if (!std::isfinite(a) || !std::isfinite(b)) return z;
    if (z != 0.0 && std::abs(z) < kTiny) return next_down(z);
    double r = std::fma(z, b, -a);
    double err = b > 0.0 ? r : -r;
    return err > 0.0 ? next_down(z) : z;
}

double div_up(double a, double b) {
    double z = a / b;
    if (std::isnan(z)) throw NanFault("interval div: nan quotient");
    if (!std::isfinite(z)) return z == -kInf ? -kMax : z;
    if (!std::isfinite(a) || !std::isfinite(b)) return z;
    if (z != 0.0 && std::abs(z) < kTiny) return next_up(z);
    double r = std::fma(z, b, -a);
    double err = b > 0.0 ? r : -r;
    return err < 0.0 ? next_up(z) : z;
}

double sqrt_down(double a) {
    double z = std::sqrt(a);
    if (!std::isfinite(z)) return z;
    double r = std::fma(z, z, -a);  // z^2 - a
    return r > 0.0 ? next_down(z) : z;
}

double sqrt_up(double a) {
    double z = std::sqrt(a);
    if (!std::isfinite(z)) return z;
    double r = std::fma(z, z, -a);
    return r < 0.0 ? next_up(z) : z;
}

}  // namespace

double atan_padding() { return kAtanErr; }

Interval operator+(const Interval& a, const Interval& b) {
    return {add_down(a.lo(), b.lo()), add_up(a.hi(), b.hi())};
}

Interval operator-(const Interval& a, const Interval& b) {
    return {sub_down(a.lo(), b.hi()), sub_up(a.hi(), b.lo())};
}

Interval operator*(const Interval& a, const Interval& b) {
    // Absorbing zero: [0,0] * anything == [0,0], even with infinite endpoints.
    if (a.lo() == 0.0 && a.hi() == 0.0) return {0.0, 0.0};
    if (b.lo() == 0.0 && b.hi() == 0.0) return {0.0, 0.0};
    const std::array<std::pair<double, double>, 4> c = {{
        {a.lo(), b.lo()}, {a.lo(), b.hi()}, {a.hi(), b.lo()}, {a.hi(), b.hi()}}};
    double lo = kInf, hi = -kInf;
    for (auto [x, y] : c) {
        if ((x == 0.0 && std::isinf(y)) || (y == 0.0 && std::isinf(x))) {
            lo = std::min(lo, 0.0);
            hi = std::max(hi, 0.0);
            continue;
        }
        lo = std::min(lo, mul_down(x, y));
        hi = std::max(hi, mul_up(x, y));
    }
    return {lo, hi};
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.lo() <= 0.0 && b.hi() >= 0.0)
        throw DivisorContainsZero("interval div: divisor contains zero");
    const std::array<std::pair<double, double>, 4> c = {{
        {a.lo(), b.lo()}, {a.lo(), b.hi()}, {a.hi(), b.lo()}, {a.hi(), b.hi()}}};
    double lo = kInf, hi = -kInf;
    for (auto [x, y] : c) {
        lo = std::min(lo, div_down(x, y));
        hi = std::max(hi, div_up(x, y));
    }
    return {lo, hi};
}

Interval i_sqrt(const Interval& a) {
    if (a.hi() < 0.0) throw WhollyNegative("i_sqrt: interval entirely negative");
    double lo = a.lo() < 0.0 ? 0.0 : sqrt_down(a.lo());
    return {lo, sqrt_up(a.hi())};
}

Interval i_atan(const Interval& a) {
    double lo = next_down(sub_down(std::atan(a.lo()), kAtanErr));
    double hi = next_up(add_up(std::atan(a.hi()), kAtanErr));
    return {lo, hi};
}

Interval i_square(const Interval& a) {
    if (a.lo() >= 0.0) return {mul_down(a.lo(), a.lo()), mul_up(a.hi(), a.hi())};
    if (a.hi() <= 0.0) return {mul_down(a.hi(), a.hi()), mul_up(a.lo(), a.lo())};
    double m = std::max(-a.lo(), a.hi());
    return {0.0, mul_up(m, m)};
}

Interval i_abs(const Interval& a) {
    if (a.lo() >= 0.0) return a;
    if (a.hi() <= 0.0) return -a;
    return {0.0, std::max(-a.lo(), a.hi())};
}

Interval i_min(const Interval& a, const Interval& b) {
    return {std::min(a.lo(), b.lo()), std::min(a.hi(), b.hi())};
}

Interval i_max(const Interval& a, const Interval& b) {
    return {std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

Interval i_hull(const Interval& a, const Interval& b) {
    return {std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

Interval i_intersect(const Interval& a, const Interval& b) {
    if (!a.intersects(b)) throw std::invalid_argument("i_intersect: empty");
    return {std::max(a.lo(), b.lo()), std::min(a.hi(), b.hi())};
}

namespace {

// acos on a subinterval of [0.5, 1]: acos(z) = atan(sqrt(1-z^2)/z), which
// stays regular at z = 1.
Interval acos_high(const Interval& a) {
    Interval w = i_sqrt(i_max(Interval(1.0) - i_square(a), Interval(0.0)));
    Interval r = i_atan(w / a);
    return {std::max(0.0, r.lo()), r.hi()};
}

// acos on a subinterval of [-0.5, 0.5]: pi/2 - atan(z/sqrt(1-z^2)).
Interval acos_mid(const Interval& a) {
    Interval w = i_sqrt(Interval(1.0) - i_square(a));
    return i_pi() / Interval(2.0) - i_atan(a / w);
}

}  // namespace

Interval i_acos(const Interval& a) {
    if (a.lo() < -1.0 || a.hi() > 1.0)
        throw std::domain_error("i_acos: argument exceeds [-1,1]");
    bool have = false;
    Interval acc(0.0);
    auto merge = [&](const Interval& piece) {
        acc = have ? i_hull(acc, piece) : piece;
        have = true;
    };
    if (a.hi() >= 0.5) {
        Interval part(std::max(a.lo(), 0.5), a.hi());
        merge(acos_high(part));
    }
    if (a.lo() <= -0.5) {
        Interval part(std::max(-a.hi(), 0.5), -a.lo());
        merge(i_pi() - acos_high(part));
    }
    if (a.lo() < 0.5 && a.hi() > -0.5) {
        Interval part(std::max(a.lo(), -0.5), std::min(a.hi(), 0.5));
        merge(acos_mid(part));
    }
    return {std::max(0.0, acc.lo()), std::min(i_pi().hi(), acc.hi())};
}

Interval i_pi() {
    // 0x1.921fb54442d18p+1 is the double just below pi.
    constexpr double pi_lo = 0x1.921fb54442d18p+1;
    return {pi_lo, std::nextafter(pi_lo, kInf)};
}

Interval interval_from_decimal(std::string_view s) {
    size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = s[i] == '-';
        ++i;
    }
    std::uint64_t int_part = 0;
    int int_digits = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
        int_part = int_part * 10 + static_cast<std::uint64_t>(s[i] - '0');
        ++int_digits;
        ++i;
    }
    std::uint64_t frac_num = 0;
    int frac_digits = 0;
    if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
            frac_num = frac_num * 10 + static_cast<std::uint64_t>(s[i] - '0');
            ++frac_digits;
            ++i;
        }
    }
    if (i != s.size() || (int_digits == 0 && frac_digits == 0) ||
        int_digits > 15 || frac_digits > 17)
        throw std::invalid_argument("interval_from_decimal: bad literal '" +
                                    std::string(s) + "'");
    Interval v(static_cast<double>(int_part));  // exact: < 10^15 < 2^53
    if (frac_digits > 0) {
        // Split numerators above 2^53 into two exactly representable chunks.
        Interval num;
        if (frac_num < (1ull << 53)) {
            num = Interval(static_cast<double>(frac_num));
        } else {
            std::uint64_t hi_chunk = frac_num / 1000000;
            std::uint64_t lo_chunk = frac_num % 1000000;
            num = Interval(static_cast<double>(hi_chunk)) * Interval(1000000.0) +
                  Interval(static_cast<double>(lo_chunk));
        }
        double den = 1.0;
        for (int k = 0; k < frac_digits; ++k) den *= 10.0;  // exact up to 10^22
        v += num / Interval(den);
    }
    return neg ? -v : v;
}

std::string Interval::str() const {
    char buf[80];
    std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", lo_, hi_);
    return buf;
}

}  // namespace pentaver

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pentaver {

// Thrown when an operation would silently produce NaN.  Always a hard
// fault, never recoverable by splitting.
struct NanFault : std::domain_error {
    using std::domain_error::domain_error;
};

// Base of the recoverable evaluation failures: the enclosure on a cell is
// too coarse to evaluate (a divisor straddles zero, a face degenerates);
// the search engine responds by splitting the cell.
struct EvaluationTooCoarse : std::domain_error {
    using std::domain_error::domain_error;
};

// Division by an interval containing zero.
struct DivisorContainsZero : EvaluationTooCoarse {
    using EvaluationTooCoarse::EvaluationTooCoarse;
};

// sqrt of an interval that is entirely negative.
struct WhollyNegative : EvaluationTooCoarse {
    using EvaluationTooCoarse::EvaluationTooCoarse;
};

// A closed interval of reals with binary64 endpoints, rounded outward.
//
// Every operation guarantees containment: for all points a in A, b in B the
// exact real result of a op b lies in A op B.  Directed rounding is emulated
// with error-free transformations (two-sum / fma residuals) plus a one-ulp
// nextafter step, so results that are exactly representable stay exact and
// no ambient rounding-mode state is ever touched.  Intervals are immutable
// values and freely shareable across threads.
class Interval {
  public:
    Interval() : lo_(0.0), hi_(0.0) {}

    // Point interval. NaN is a hard fault.
    Interval(double v) : lo_(v), hi_(v) {  // NOLINT: implicit by design
        if (std::isnan(v)) throw NanFault("Interval: NaN endpoint");
    }

    Interval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (std::isnan(lo) || std::isnan(hi)) throw NanFault("Interval: NaN endpoint");
        if (lo > hi) throw std::invalid_argument("Interval: lo > hi");
    }

    static Interval entire() {
        return {-std::numeric_limits<double>::infinity(),
                std::numeric_limits<double>::infinity()};
    }

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double mid() const { return 0.5 * (lo_ + hi_); }
    double rad() const { return 0.5 * (hi_ - lo_); }
    double width() const { return hi_ - lo_; }

    bool is_point() const { return lo_ == hi_; }
    bool contains(double v) const { return lo_ <= v && v <= hi_; }
    bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool subset_of(const Interval& o) const { return o.contains(*this); }
    bool intersects(const Interval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }

    Interval operator-() const { return {-hi_, -lo_}; }

    std::string str() const;

  private:
    double lo_, hi_;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);

inline Interval& operator+=(Interval& a, const Interval& b) { return a = a + b; }
inline Interval& operator-=(Interval& a, const Interval& b) { return a = a - b; }
inline Interval& operator*=(Interval& a, const Interval& b) { return a = a * b; }
inline Interval& operator/=(Interval& a, const Interval& b) { return a = a / b; }

// sqrt clamps a negative lower endpoint to zero; an interval that is wholly
// negative is rejected loudly.
Interval i_sqrt(const Interval& a);

// Monotone endpoint-wise arctangent, padded by ATANERR = 2^-49 on each side
// to absorb the libm error bound.
Interval i_atan(const Interval& a);

// Tight square: [0, max^2] when the interval straddles zero.
Interval i_square(const Interval& a);

// abs, min, max, hull.
Interval i_abs(const Interval& a);
Interval i_min(const Interval& a, const Interval& b);
Interval i_max(const Interval& a, const Interval& b);
Interval i_hull(const Interval& a, const Interval& b);

// Intersection; empty intersection is an error (caller must check first).
Interval i_intersect(const Interval& a, const Interval& b);

// acos on (-1, 1), derived from atan; endpoints at +-1 are handled by clamp.
Interval i_acos(const Interval& a);

// Enclosure of pi.
Interval i_pi();

// Parses a plain decimal string ("0.49246", "-1.04", "12") into the tightest
// practical enclosure of the exact decimal value.  Exact when representable.
Interval interval_from_decimal(std::string_view s);

// atan padding constant (2^-49), exposed for tests.
double atan_padding();

}  // namespace pentaver

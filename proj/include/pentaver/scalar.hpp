#pragma once

#include <cmath>

#include "pentaver/interval.hpp"

namespace pentaver {

// ADL-friendly names so templated formulas can say `sqrt(x)` for any scalar.
inline Interval sqrt(const Interval& a) { return i_sqrt(a); }
inline Interval atan(const Interval& a) { return i_atan(a); }
inline Interval sqr(const Interval& a) { return i_square(a); }
inline Interval acos(const Interval& a) { return i_acos(a); }

inline long double sqr(long double a) { return a * a; }
inline double sqr(double a) { return a * a; }

// Exact-match overloads so templated formulas do not fall back to the
// Interval versions through the implicit double -> Interval conversion.
inline long double sqrt(long double a) { return std::sqrt(a); }
inline long double atan(long double a) { return std::atan(a); }
inline long double acos(long double a) { return std::acos(a); }
inline double sqrt(double a) { return std::sqrt(a); }
inline double atan(double a) { return std::atan(a); }
inline double acos(double a) { return std::acos(a); }

// Enclosure of a scalar's value set, for branch decisions inside templated
// formulas.  Jet types overload this with their value part.
inline Interval value_of(const Interval& v) { return v; }
inline Interval value_of(long double v) {
    return Interval(static_cast<double>(v));
}
inline Interval value_of(double v) { return Interval(v); }

// Bridges an Interval-valued constant into the scalar type of a templated
// formula.  The long double instantiation is the non-rigorous serial
// reference; it takes the midpoint.
template <class T>
struct ScalarFrom {
    static T constant(const Interval& v) { return T(v); }
};

template <>
struct ScalarFrom<long double> {
    static long double constant(const Interval& v) {
        return 0.5L * (static_cast<long double>(v.lo()) +
                       static_cast<long double>(v.hi()));
    }
};

template <>
struct ScalarFrom<double> {
    static double constant(const Interval& v) { return v.mid(); }
};

template <class T>
T scalar_pi() {
    return ScalarFrom<T>::constant(i_pi());
}

template <>
inline long double scalar_pi<long double>() {
    return 3.14159265358979323846264338327950288L;
}

template <>
inline double scalar_pi<double>() {
    return 3.141592653589793238462643383279502884;
}

}  // namespace pentaver

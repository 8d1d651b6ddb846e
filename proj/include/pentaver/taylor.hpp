#pragma once

#include <array>
#include <optional>

#include "pentaver/functions.hpp"

namespace pentaver {

// Hull of all mixed second partials d^2 f / dx_i dx_j of a function over a
// domain box, computed on a uniform grid of subcells.
struct SecondPartialTable {
    FnId fn = FnId::Dih;
    std::array<Interval, 6> domain;
    int subdivisions = 0;
    Interval bound{0.0};

    // magnitude bound M = max |second partial|
    double magnitude() const {
        return std::max(std::abs(bound.lo()), std::abs(bound.hi()));
    }
};

// Builds the table by hulling D2 jets over the grid.  Parallelizes over
// subcells when parallel = true; the hull is order-independent, so serial
// and parallel builds agree exactly.
SecondPartialTable build_second_partial_table(
    FnId fn, const std::array<Interval, 6>& domain, int subdivisions,
    bool parallel = true);

// Serial reference implementation kept for testing the parallel build.
SecondPartialTable build_second_partial_table_serial(
    FnId fn, const std::array<Interval, 6>& domain, int subdivisions);

// Versioned text round-trip for caching.
std::string table_to_text(const SecondPartialTable& t);
std::optional<SecondPartialTable> table_from_text(const std::string& text);

// File cache: loads a matching table, or builds and stores one.  When
// revalidate is set, a cache hit is rebuilt and checked for agreement.
SecondPartialTable table_cached(FnId fn, const std::array<Interval, 6>& domain,
                                int subdivisions, const std::string& cache_dir,
                                bool revalidate = false, bool parallel = true);

// A second-order Taylor enclosure of f on a cell:
//   upper = f(mid) + sum_i |g_i(mid)| r_i + (1/2) M (sum_i r_i)^2.
struct TaylorEnclosure {
    Interval center{0.0};
    std::array<Interval, 6> gradient;
    Interval remainder{0.0};
    Interval enclosure{0.0};
};

// The magnitude bound M comes from a composed table covering the cell.
TaylorEnclosure taylor_enclosure(FnId fn, const std::array<Interval, 6>& cell,
                                 double magnitude_bound);

double taylor_upper_bound(FnId fn, const std::array<Interval, 6>& cell,
                          double magnitude_bound);

// Componentwise enclosure of the gradient of f over the cell, via a direct
// first-order jet evaluation with interval inputs.
std::array<Interval, 6> gradient_enclosure(FnId fn,
                                           const std::array<Interval, 6>& cell);

// Gradient enclosure through the second-partial bound:
// g_i(cell) in g_i(mid) + [-1,1] M sum_j r_j.
std::array<Interval, 6> gradient_enclosure_taylor(
    FnId fn, const std::array<Interval, 6>& cell, double magnitude_bound);

}  // namespace pentaver

#include "pentaver/taylor.hpp"

#include <atomic>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace pentaver {

std::string fn_name(FnId fn) {
    switch (fn) {
        case FnId::Dih: return "dih";
        case FnId::Sol: return "sol";
        case FnId::GmaVolume: return "gma_volume";
        case FnId::VorVolume: return "vor_volume";
        case FnId::Gma: return "gma";
        case FnId::Vor: return "vor";
        case FnId::Octavor: return "octavor";
        case FnId::TruncHalf: return "trunc_half";
        case FnId::EtaSq126: return "eta_sq_126";
        case FnId::EtaSq456: return "eta_sq_456";
        case FnId::EtaSq135: return "eta_sq_135";
        case FnId::X1: return "x1";
        case FnId::DimredPoly: return "dimred_poly";
    }
    return "?";
}

namespace {

// Subcell k of n along one axis, rounded outward so the grid covers the box.
Interval grid_slice(const Interval& axis, int k, int n) {
    Interval w = (Interval(axis.hi()) - Interval(axis.lo())) / Interval(n);
    Interval lo = Interval(axis.lo()) + Interval(k) * w;
    Interval hi = Interval(axis.lo()) + Interval(k + 1) * w;
    double a = k == 0 ? axis.lo() : lo.lo();
    double b = k == n - 1 ? axis.hi() : hi.hi();
    return {a, std::max(a, b)};
}

Interval hull_hessian(FnId fn, const std::array<Interval, 6>& cell) {
    std::array<D2, 6> jets;
    for (int i = 0; i < 6; ++i) jets[i] = D2::variable(cell[i], i);
    D2 r = eval_fn<D2>(fn, jets);
    Interval h = r.h[0];
    for (int k = 1; k < 21; ++k) h = i_hull(h, r.h[k]);
    return h;
}

// Coarse grid cells can be too wide to evaluate (a sqrt argument enclosure
// touching zero); refine locally until the jets go through.
Interval hull_hessian_refined(FnId fn, const std::array<Interval, 6>& cell,
                              int depth) {
    try {
        return hull_hessian(fn, cell);
    } catch (const EvaluationTooCoarse&) {
        if (depth >= 14) throw;
        int widest = 0;
        for (int i = 1; i < 6; ++i)
            if (cell[i].width() > cell[widest].width()) widest = i;
        auto left = cell, right = cell;
        double m = cell[widest].mid();
        left[widest] = Interval(cell[widest].lo(), m);
        right[widest] = Interval(m, cell[widest].hi());
        return i_hull(hull_hessian_refined(fn, left, depth + 1),
                      hull_hessian_refined(fn, right, depth + 1));
    }
}

SecondPartialTable build_impl(FnId fn, const std::array<Interval, 6>& domain,
                              int subdivisions, bool parallel) {
    SecondPartialTable t;
    t.fn = fn;
    t.domain = domain;
    t.subdivisions = subdivisions;
    const int n = subdivisions;
    long outer = static_cast<long>(n) * n;
    bool have = false;
    Interval acc(0.0);

    std::exception_ptr failure;
    std::atomic<bool> failed{false};
#pragma omp parallel if (parallel)
    {
        bool lhave = false;
        Interval lacc(0.0);
#pragma omp for schedule(dynamic)
        for (long oi = 0; oi < outer; ++oi) {
            if (failed.load(std::memory_order_relaxed)) continue;
            try {
                int k0 = static_cast<int>(oi / n);
                int k1 = static_cast<int>(oi % n);
                std::array<Interval, 6> cell;
                cell[0] = grid_slice(domain[0], k0, n);
                cell[1] = grid_slice(domain[1], k1, n);
                std::array<int, 4> idx{0, 0, 0, 0};
                while (true) {
                    for (int d = 0; d < 4; ++d)
                        cell[2 + d] = grid_slice(domain[2 + d], idx[d], n);
                    Interval h = hull_hessian_refined(fn, cell, 0);
                    lacc = lhave ? i_hull(lacc, h) : h;
                    lhave = true;
                    int d = 3;
                    while (d >= 0 && ++idx[d] == n) idx[d--] = 0;
                    if (d < 0) break;
                }
            } catch (...) {
#pragma omp critical
                {
                    if (!failure) failure = std::current_exception();
                }
                failed.store(true, std::memory_order_relaxed);
            }
        }
#pragma omp critical
        {
            if (lhave) {
                acc = have ? i_hull(acc, lacc) : lacc;
                have = true;
            }
        }
    }
    if (failure) std::rethrow_exception(failure);
    t.bound = acc;
    return t;
}

}  // namespace

SecondPartialTable build_second_partial_table(
    FnId fn, const std::array<Interval, 6>& domain, int subdivisions,
    bool parallel) {
    return build_impl(fn, domain, subdivisions, parallel);
}

SecondPartialTable build_second_partial_table_serial(
    FnId fn, const std::array<Interval, 6>& domain, int subdivisions) {
    return build_impl(fn, domain, subdivisions, false);
}

std::string table_to_text(const SecondPartialTable& t) {
    std::ostringstream os;
    os << "pentaver-table-v1\n";
    os << "fn " << fn_name(t.fn) << " " << static_cast<int>(t.fn) << "\n";
    os << "subdivisions " << t.subdivisions << "\n";
    char buf[64];
    os << "domain";
    for (const auto& d : t.domain) {
        std::snprintf(buf, sizeof buf, " %.17g %.17g", d.lo(), d.hi());
        os << buf;
    }
    os << "\nbound";
    std::snprintf(buf, sizeof buf, " %.17g %.17g", t.bound.lo(), t.bound.hi());
    os << buf << "\n";
    return os.str();
}

std::optional<SecondPartialTable> table_from_text(const std::string& text) {
    std::istringstream is(text);
    std::string line, word, name;
    if (!std::getline(is, line) || line != "pentaver-table-v1") return {};
    SecondPartialTable t;
    int fn_int = -1;
    is >> word >> name >> fn_int;
    if (word != "fn") return {};
    t.fn = static_cast<FnId>(fn_int);
    is >> word >> t.subdivisions;
    if (word != "subdivisions") return {};
    is >> word;
    if (word != "domain") return {};
    for (auto& d : t.domain) {
        double lo, hi;
        is >> lo >> hi;
        if (!is) return {};
        d = Interval(lo, hi);
    }
    is >> word;
    if (word != "bound") return {};
    double lo, hi;
    is >> lo >> hi;
    if (!is) return {};
    t.bound = Interval(lo, hi);
    return t;
}

SecondPartialTable table_cached(FnId fn, const std::array<Interval, 6>& domain,
                                int subdivisions, const std::string& cache_dir,
                                bool revalidate, bool parallel) {
    std::string key;
    {
        std::ostringstream os;
        os << fn_name(fn) << "_" << subdivisions;
        std::uint64_t h = 1469598103934665603ull;
        for (const auto& d : domain) {
            for (double v : {d.lo(), d.hi()}) {
                std::uint64_t bits;
                std::memcpy(&bits, &v, sizeof bits);
                h = (h ^ bits) * 1099511628211ull;
            }
        }
        os << "_" << std::hex << h << ".table";
        key = os.str();
    }
    std::filesystem::path path = std::filesystem::path(cache_dir) / key;
    if (!cache_dir.empty() && std::filesystem::exists(path)) {
        std::ifstream in(path);
        std::stringstream ss;
        ss << in.rdbuf();
        auto t = table_from_text(ss.str());
        if (t && t->fn == fn && t->subdivisions == subdivisions) {
            if (!revalidate) return *t;
            SecondPartialTable fresh =
                build_impl(fn, domain, subdivisions, parallel);
            if (fresh.bound.lo() == t->bound.lo() &&
                fresh.bound.hi() == t->bound.hi())
                return *t;
            // stale cache entry: rebuild below and overwrite
        }
    }
    SecondPartialTable t = build_impl(fn, domain, subdivisions, parallel);
    if (!cache_dir.empty()) {
        std::filesystem::create_directories(cache_dir);
        std::ofstream out(path);
        out << table_to_text(t);
    }
    return t;
}

TaylorEnclosure taylor_enclosure(FnId fn, const std::array<Interval, 6>& cell,
                                 double magnitude_bound) {
    TaylorEnclosure out;
    std::array<Interval, 6> mid;
    std::array<Interval, 6> radius;
    Interval radius_sum(0.0);
    for (int i = 0; i < 6; ++i) {
        mid[i] = Interval(cell[i].mid());
        Interval up = Interval(cell[i].hi()) - mid[i];
        Interval dn = mid[i] - Interval(cell[i].lo());
        radius[i] = i_max(up, dn);
        radius_sum += radius[i];
    }

    std::array<D1, 6> jets;
    for (int i = 0; i < 6; ++i) jets[i] = D1::variable(mid[i], i);
    D1 r = eval_fn<D1>(fn, jets);
    out.center = r.v;
    out.gradient = r.g;

    Interval linear(0.0);
    for (int i = 0; i < 6; ++i) linear += i_abs(r.g[i]) * radius[i];
    Interval m(magnitude_bound);
    out.remainder = Interval(0.5) * m * i_square(radius_sum);
    double hi = (r.v + linear + out.remainder).hi();
    double lo = (r.v - linear - out.remainder).lo();
    out.enclosure = Interval(lo, hi);
    return out;
}

double taylor_upper_bound(FnId fn, const std::array<Interval, 6>& cell,
                          double magnitude_bound) {
    return taylor_enclosure(fn, cell, magnitude_bound).enclosure.hi();
}

std::array<Interval, 6> gradient_enclosure(
    FnId fn, const std::array<Interval, 6>& cell) {
    std::array<D1, 6> jets;
    for (int i = 0; i < 6; ++i) jets[i] = D1::variable(cell[i], i);
    D1 r = eval_fn<D1>(fn, jets);
    return r.g;
}

std::array<Interval, 6> gradient_enclosure_taylor(
    FnId fn, const std::array<Interval, 6>& cell, double magnitude_bound) {
    std::array<Interval, 6> mid;
    Interval radius_sum(0.0);
    for (int i = 0; i < 6; ++i) {
        mid[i] = Interval(cell[i].mid());
        Interval up = Interval(cell[i].hi()) - mid[i];
        Interval dn = mid[i] - Interval(cell[i].lo());
        radius_sum += i_max(up, dn);
    }
    std::array<D1, 6> jets;
    for (int i = 0; i < 6; ++i) jets[i] = D1::variable(mid[i], i);
    D1 r = eval_fn<D1>(fn, jets);
    Interval slack =
        Interval(-1.0, 1.0) * Interval(magnitude_bound) * radius_sum;
    std::array<Interval, 6> out;
    for (int i = 0; i < 6; ++i) out[i] = r.g[i] + slack;
    return out;
}

}  // namespace pentaver

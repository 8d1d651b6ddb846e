#include "pentaver/search.hpp"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pentaver {

std::pair<Cell, Cell> split(const Cell& cell) {
    int widest = -1;
    double w = 0.0;
    for (int i = 0; i < 6; ++i) {
        if (cell.pinned(i)) continue;
        double wi = cell.box[i].width();
        if (wi > w) {
            w = wi;
            widest = i;
        }
    }
    if (widest < 0 || w == 0.0)
        throw ZeroWidth("split: all coordinates are points");
    Cell a = cell, b = cell;
    double m = cell.box[widest].mid();
    a.box[widest] = Interval(cell.box[widest].lo(), m);
    b.box[widest] = Interval(m, cell.box[widest].hi());
    a.depth = b.depth = cell.depth + 1;
    return {a, b};
}

namespace {

// Edge constraints that can stop the slide of each origin vertex: its own
// edge plus the two edges joining it to the other non-origin vertices.
constexpr int kSlideConstraints[3][3] = {{0, 4, 5}, {1, 3, 5}, {2, 3, 4}};

std::array<Interval, 6> to_x_view(const Cell& cell, Param param) {
    std::array<Interval, 6> x;
    for (int i = 0; i < 6; ++i)
        x[i] = param == Param::X ? cell.box[i] : i_square(cell.box[i]);
    return x;
}

// Second-order enclosure of a linear expression on an x-box.
Interval expr_taylor_enclosure(const LinearExpr& expr,
                               const std::array<Interval, 6>& x, double mag) {
    std::array<Interval, 6> mid;
    std::array<Interval, 6> radius;
    Interval radius_sum(0.0);
    for (int i = 0; i < 6; ++i) {
        mid[i] = Interval(x[i].mid());
        Interval up = Interval(x[i].hi()) - mid[i];
        Interval dn = mid[i] - Interval(x[i].lo());
        radius[i] = i_max(up, dn);
        radius_sum += radius[i];
    }
    std::array<D1, 6> jets;
    for (int i = 0; i < 6; ++i) jets[i] = D1::variable(mid[i], i);
    D1 r = expr.eval<D1>(jets);
    Interval linear(0.0);
    for (int i = 0; i < 6; ++i) linear += i_abs(r.g[i]) * radius[i];
    Interval rem = Interval(0.5) * Interval(mag) * i_square(radius_sum);
    return {(r.v - linear - rem).lo(), (r.v + linear + rem).hi()};
}

struct PartRun {
    Param param = Param::Y;
    std::map<FnId, double> magnitudes;

    // magnitude bound of the expression's second partials, or -1 when some
    // atom has no table
    double expr_magnitude(const LinearExpr& e) const {
        double m = 0.0;
        for (const auto& a : e.atoms) {
            auto it = magnitudes.find(a.fn);
            if (it == magnitudes.end()) return -1.0;
            m += std::max(std::abs(a.coeff.lo()), std::abs(a.coeff.hi())) *
                 it->second;
        }
        return m;
    }
};

struct ReasonTable {
    const CalcSpec* calc;
    std::string name(int r) const {
        int nc = static_cast<int>(calc->clauses.size());
        if (r >= 0 && r < nc) return "clause:" + calc->clauses[r].label;
        switch (r - nc) {
            case 0: return "infeasible";
            case 1: return "no-intersection";
            case 2: return "monotonicity-face";
            case 3: return "corner-monotone";
            case 4: return "partials-negative";
        }
        return "other";
    }
    int infeasible() const { return static_cast<int>(calc->clauses.size()); }
    int no_intersection() const { return infeasible() + 1; }
    int monotone() const { return infeasible() + 2; }
    int corner() const { return infeasible() + 3; }
    int partials() const { return infeasible() + 4; }
};

bool cmp_holds(const Clause::Cmp& cmp, const std::array<Interval, 6>& x,
               const PartRun& run, double slop) {
    try {
        Interval v = cmp.expr.eval<Interval>(x);
        double rhs_lo = cmp.rhs.lo() - slop;
        double rhs_hi = cmp.rhs.hi() + slop;
        if (cmp.upper) {
            double bound = v.hi();
            if (cmp.taylor) {
                double m = run.expr_magnitude(cmp.expr);
                if (m >= 0.0) {
                    try {
                        bound = std::min(
                            bound, expr_taylor_enclosure(cmp.expr, x, m).hi());
                    } catch (const EvaluationTooCoarse&) {
                    }
                }
            }
            return cmp.strict ? bound < rhs_lo : bound <= rhs_lo;
        }
        double bound = v.lo();
        if (cmp.taylor) {
            double m = run.expr_magnitude(cmp.expr);
            if (m >= 0.0) {
                try {
                    bound = std::max(
                        bound, expr_taylor_enclosure(cmp.expr, x, m).lo());
                } catch (const EvaluationTooCoarse&) {
                }
            }
        }
        return cmp.strict ? bound > rhs_hi : bound >= rhs_hi;
    } catch (const EvaluationTooCoarse&) {
        return false;
    }
}

// Direct first-order gradient, intersected with the centered form when a
// second-partial magnitude is available.
std::array<Interval, 6> expr_gradient(const LinearExpr& expr,
                                      const std::array<Interval, 6>& x,
                                      double mag) {
    std::array<D1, 6> jets;
    for (int i = 0; i < 6; ++i) jets[i] = D1::variable(x[i], i);
    std::array<Interval, 6> g = expr.eval<D1>(jets).g;
    if (mag >= 0.0) {
        std::array<Interval, 6> mid;
        Interval radius_sum(0.0);
        for (int i = 0; i < 6; ++i) {
            mid[i] = Interval(x[i].mid());
            Interval up = Interval(x[i].hi()) - mid[i];
            Interval dn = mid[i] - Interval(x[i].lo());
            radius_sum += i_max(up, dn);
        }
        std::array<D1, 6> mjets;
        for (int i = 0; i < 6; ++i) mjets[i] = D1::variable(mid[i], i);
        D1 center = expr.eval<D1>(mjets);
        Interval slack = Interval(-1.0, 1.0) * Interval(mag) * radius_sum;
        for (int i = 0; i < 6; ++i) {
            Interval t = center.g[i] + slack;
            if (t.intersects(g[i])) g[i] = i_intersect(t, g[i]);
        }
    }
    return g;
}

}  // namespace

std::vector<Cell> apply_dimension_reduction(const CalcSpec& calc,
                                            const CalcPart& part) {
    Cell root;
    root.box = part.domain;
    for (int i = 0; i < 6; ++i)
        if (part.pinned[i]) root.pin(i);
    for (const auto& [src, dst] : calc.ties) {
        (void)src;
        root.pin(dst);
    }
    if (part.boundary) root.pin(part.boundary->solve_coord);

    if (!part.use_dimred || calc.slide_vertices.empty()) return {root};

    std::vector<Cell> cases;
    std::vector<std::uint8_t> seen;
    int nv = static_cast<int>(calc.slide_vertices.size());
    std::vector<int> choice(nv, 0);
    while (true) {
        Cell c = root;
        std::uint8_t pins = 0;
        for (int k = 0; k < nv; ++k) {
            int coord = kSlideConstraints[calc.slide_vertices[k]][choice[k]];
            pins = static_cast<std::uint8_t>(pins | (1u << coord));
        }
        for (int i = 0; i < 6; ++i) {
            if ((pins >> i) & 1) {
                c.box[i] = Interval(part.domain[i].lo());
                c.pin(i);
            }
        }
        if (std::find(seen.begin(), seen.end(), pins) == seen.end()) {
            seen.push_back(pins);
            cases.push_back(c);
        }
        int k = nv - 1;
        while (k >= 0 && ++choice[k] == 3) choice[k--] = 0;
        if (k < 0) break;
    }
    return cases;
}

std::optional<Interval> boundary_solve(const BoundaryConstraint& bc,
                                       const Cell& cell, Param param) {
    // Keep the sub-segments of the solve axis whose enclosure contains 2,
    // refining the hull a few times.
    Interval axis = cell.box[bc.solve_coord];
    auto eval_eta = [&](const Interval& seg) -> std::optional<Interval> {
        Cell c = cell;
        c.box[bc.solve_coord] = seg;
        try {
            return eval_fn<Interval>(bc.eta_fn, to_x_view(c, param));
        } catch (const EvaluationTooCoarse&) {
            return std::nullopt;
        }
    };
    for (int round = 0; round < 3; ++round) {
        const int segs = 16;
        double lo = axis.lo(), w = axis.width();
        bool found = false;
        double root_lo = 0.0, root_hi = 0.0;
        for (int k = 0; k < segs; ++k) {
            double a = k == 0 ? axis.lo() : lo + w * k / segs;
            double b = k == segs - 1 ? axis.hi() : lo + w * (k + 1) / segs;
            if (a > b) continue;
            auto e = eval_eta(Interval(a, b));
            bool maybe = !e.has_value() || e->contains(2.0);
            if (maybe) {
                if (!found) {
                    root_lo = a;
                    found = true;
                }
                root_hi = b;
            }
        }
        if (!found) return std::nullopt;
        axis = Interval(root_lo, root_hi);
        if (axis.width() <= 1e-12) break;
    }
    return axis;
}

std::optional<Cell> monotonicity_restrict(const LinearExpr& expr,
                                          const Cell& cell, Param param,
                                          double magnitude_bound) {
    Cell out = cell;
    bool moved = false;
    for (int round = 0; round < 6; ++round) {
        std::array<Interval, 6> g;
        try {
            g = expr_gradient(expr, to_x_view(out, param), magnitude_bound);
        } catch (const EvaluationTooCoarse&) {
            break;
        }
        bool changed = false;
        for (int i = 0; i < 6; ++i) {
            if (out.pinned(i) || out.box[i].is_point()) continue;
            if (g[i].lo() > 0.0) {
                out.box[i] = Interval(out.box[i].hi());
                changed = moved = true;
            } else if (g[i].hi() < 0.0) {
                out.box[i] = Interval(out.box[i].lo());
                changed = moved = true;
            }
        }
        if (!changed) break;
    }
    if (!moved) return std::nullopt;
    return out;
}

namespace {

enum class Outcome : std::uint8_t { Discard, Split, Survive };

struct CellResult {
    Outcome outcome = Outcome::Split;
    int reason = -1;
    Cell children[2];
};

void process_cell(const Cell& cell0, const CalcSpec& calc, const CalcPart& part,
                  const PartRun& run, const Budget& budget, CellResult& out) {
    Cell cell = cell0;
    for (const auto& [src, dst] : calc.ties) cell.box[dst] = cell.box[src];

    ReasonTable reasons{&calc};

    if (part.boundary) {
        auto solved = boundary_solve(*part.boundary, cell, calc.param);
        if (!solved) {
            out.outcome = Outcome::Discard;
            out.reason = reasons.no_intersection();
            return;
        }
        cell.box[part.boundary->solve_coord] = *solved;
    }

    std::array<Interval, 6> x = to_x_view(cell, calc.param);

    if (calc.feasibility_check) {
        Interval d = delta_boxed(x);
        if (d.hi() <= 0.0) {
            out.outcome = Outcome::Discard;
            out.reason = reasons.infeasible();
            return;
        }
    }

    if (calc.partials) {
        try {
            auto it = run.magnitudes.find(calc.partials->fn);
            std::array<Interval, 6> g;
            if (it != run.magnitudes.end()) {
                g = gradient_enclosure_taylor(calc.partials->fn, x, it->second);
                auto gd = gradient_enclosure(calc.partials->fn, x);
                for (int i = 0; i < 6; ++i)
                    if (g[i].intersects(gd[i])) g[i] = i_intersect(g[i], gd[i]);
            } else {
                g = gradient_enclosure(calc.partials->fn, x);
            }
            bool all = true;
            for (int i : calc.partials->indices)
                if (!(g[i].hi() < 0.0)) all = false;
            if (all) {
                out.outcome = Outcome::Discard;
                out.reason = reasons.partials();
                return;
            }
        } catch (const EvaluationTooCoarse&) {
        }
        if (cell.depth >= budget.max_depth) {
            out.outcome = Outcome::Survive;
            return;
        }
        auto [a, b] = split(cell);
        out.outcome = Outcome::Split;
        out.children[0] = a;
        out.children[1] = b;
        return;
    }

    for (std::size_t ci = 0; ci < calc.clauses.size(); ++ci) {
        const Clause& cl = calc.clauses[ci];
        bool all = true;
        for (const auto& cmp : cl.cmps) {
            if (!cmp_holds(cmp, x, run, calc.slop)) {
                all = false;
                break;
            }
        }
        if (all) {
            out.outcome = Outcome::Discard;
            out.reason = static_cast<int>(ci);
            return;
        }
    }

    for (std::size_t ci = 0; ci < calc.clauses.size(); ++ci) {
        const Clause& cl = calc.clauses[ci];
        if (!cl.allow_monotone_restrict()) continue;
        const auto& cmp = cl.cmps[0];
        try {
            double m = run.expr_magnitude(cmp.expr);
            auto restricted =
                monotonicity_restrict(cmp.expr, cell, calc.param, m);
            if (restricted) {
                std::array<Interval, 6> xr = to_x_view(*restricted, calc.param);
                if (cmp_holds(cmp, xr, run, calc.slop)) {
                    out.outcome = Outcome::Discard;
                    out.reason = reasons.monotone();
                    return;
                }
            }
        } catch (const EvaluationTooCoarse&) {
        }
        break;
    }

    if (part.tight_corner && !calc.clauses.empty() &&
        calc.clauses[0].allow_monotone_restrict()) {
        const TightCorner& tc = *part.tight_corner;
        bool touches = true;
        for (int i = 0; i < 6; ++i)
            if (!cell.box[i].contains(tc.point[i])) touches = false;
        if (touches) {
            try {
                double m = run.expr_magnitude(calc.clauses[0].cmps[0].expr);
                auto g = expr_gradient(calc.clauses[0].cmps[0].expr, x, m);
                bool mono = true;
                for (int i = 0; i < 6; ++i) {
                    if (tc.dir[i] == 0 || cell.box[i].is_point()) continue;
                    if (tc.dir[i] < 0 && !(g[i].hi() <= 0.0)) mono = false;
                    if (tc.dir[i] > 0 && !(g[i].lo() >= 0.0)) mono = false;
                }
                if (mono) {
                    out.outcome = Outcome::Discard;
                    out.reason = reasons.corner();
                    return;
                }
            } catch (const EvaluationTooCoarse&) {
            }
        }
    }

    if (cell.depth >= budget.max_depth) {
        out.outcome = Outcome::Survive;
        return;
    }
    try {
        auto [a, b] = split(cell);
        out.outcome = Outcome::Split;
        out.children[0] = a;
        out.children[1] = b;
    } catch (const ZeroWidth&) {
        out.outcome = Outcome::Survive;
    }
}

VerificationReport run_part(
    const CalcSpec& calc, const CalcPart& part, std::vector<Cell> frontier,
    const Budget& budget, const SearchOptions& opts,
    std::vector<std::pair<std::string, Cell>>* survivors_out,
    const std::string& survivor_label) {
    auto start = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.calc_id = calc.id + "/" + part.label;
    rep.slop = calc.slop;
    ReasonTable reasons{&calc};

    PartRun run;
    run.param = calc.param;

    if (!calc.taylor_fns.empty() && !frontier.empty()) {
        std::array<Interval, 6> hull = to_x_view(frontier[0], calc.param);
        for (const auto& c : frontier) {
            auto x = to_x_view(c, calc.param);
            for (int i = 0; i < 6; ++i) hull[i] = i_hull(hull[i], x[i]);
        }
        for (FnId fn : calc.taylor_fns) {
            try {
                SecondPartialTable t =
                    table_cached(fn, hull, calc.table_subdivisions,
                                 opts.cache_dir, false, opts.parallel);
                run.magnitudes[fn] = t.magnitude();
            } catch (const EvaluationTooCoarse&) {
                // no finite table on this domain; fall back to direct bounds
            }
        }
    }

    std::uint64_t processed = 0;
    bool exhausted = false;
    while (!frontier.empty()) {
        if (processed + frontier.size() > budget.max_cells) {
            exhausted = true;
            break;
        }
        if (budget.wall_seconds > 0.0) {
            double el = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
            if (el > budget.wall_seconds) {
                exhausted = true;
                break;
            }
        }
        const std::size_t n = frontier.size();
        std::vector<CellResult> results(n);
        long nn = static_cast<long>(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (opts.parallel)
#endif
        for (long i = 0; i < nn; ++i)
            process_cell(frontier[i], calc, part, run, budget, results[i]);

        std::vector<Cell> next;
        next.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            ++processed;
            rep.max_depth = std::max(rep.max_depth, frontier[i].depth);
            if (opts.leaf_sink && !opts.parallel &&
                results[i].outcome != Outcome::Split)
                opts.leaf_sink(frontier[i],
                               results[i].outcome == Outcome::Discard);
            switch (results[i].outcome) {
                case Outcome::Discard:
                    ++rep.leaves_discarded;
                    ++rep.discards[reasons.name(results[i].reason)];
                    break;
                case Outcome::Split:
                    ++rep.internal_splits;
                    next.push_back(results[i].children[0]);
                    next.push_back(results[i].children[1]);
                    break;
                case Outcome::Survive:
                    ++rep.survivors;
                    if (survivors_out)
                        survivors_out->emplace_back(survivor_label, frontier[i]);
                    break;
            }
        }
        frontier = std::move(next);
    }

    if (exhausted) {
        rep.budget_exhausted = true;
        rep.survivors += frontier.size();
        if (survivors_out)
            for (const auto& c : frontier)
                survivors_out->emplace_back(survivor_label, c);
        processed += frontier.size();
    }
    rep.cells_considered = processed;
    rep.verified = !exhausted && rep.survivors == 0;
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return rep;
}

VerificationReport run_calc(const CalcSpec& calc,
                            std::vector<std::pair<std::string, Cell>> frontier,
                            bool from_checkpoint, const Budget& budget,
                            const SearchOptions& opts) {
    VerificationReport rep;
    rep.calc_id = calc.id;
    rep.verified = true;
    rep.slop = calc.slop;

#ifdef _OPENMP
    int save_workers = omp_get_max_threads();
    if (budget.workers > 0) omp_set_num_threads(budget.workers);
#endif

    std::vector<std::pair<std::string, Cell>> survivors;
    for (const CalcPart& part : calc.parts) {
        std::vector<std::vector<Cell>> frontiers;
        std::vector<std::string> labels;
        if (from_checkpoint) {
            std::vector<Cell> cells;
            for (const auto& [label, cell] : frontier)
                if (label == part.label) cells.push_back(cell);
            if (cells.empty()) continue;  // this part already completed
            frontiers.push_back(std::move(cells));
            labels.push_back(part.label);
        } else {
            std::vector<Cell> roots = apply_dimension_reduction(calc, part);
            for (std::size_t k = 0; k < roots.size(); ++k) {
                frontiers.push_back({roots[k]});
                labels.push_back(roots.size() == 1
                                     ? part.label
                                     : part.label + ".case" + std::to_string(k));
            }
        }
        for (std::size_t k = 0; k < frontiers.size(); ++k) {
            CalcPart sub = part;
            sub.label = labels[k];
            VerificationReport pr = run_part(calc, sub, frontiers[k], budget,
                                             opts, &survivors, part.label);
            rep.absorb(pr);
        }
    }

#ifdef _OPENMP
    if (budget.workers > 0) omp_set_num_threads(save_workers);
#endif

    if (!survivors.empty() && !opts.checkpoint_path.empty()) {
        CheckpointData data;
        data.calc_id = calc.id;
        data.cells = survivors;
        write_checkpoint(opts.checkpoint_path, data);
        rep.checkpoint_path = opts.checkpoint_path;
    }
    return rep;
}

}  // namespace

VerificationReport verify(const CalcSpec& calc, const Budget& budget,
                          const SearchOptions& opts) {
    return run_calc(calc, {}, false, budget, opts);
}

VerificationReport resume(const CalcSpec& calc, const std::string& checkpoint,
                          const Budget& budget, const SearchOptions& opts) {
    CheckpointData data = read_checkpoint(checkpoint);
    if (data.calc_id != calc.id)
        throw ChecksumMismatch("resume: checkpoint belongs to calc '" +
                               data.calc_id + "'");
    if (data.cells.empty()) {
        VerificationReport rep;
        rep.calc_id = calc.id;
        rep.verified = true;
        rep.note = "checkpoint carried no surviving cells";
        return rep;
    }
    return run_calc(calc, data.cells, true, budget, opts);
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

void write_checkpoint(const std::string& path, const CheckpointData& data) {
    std::ostringstream body;
    body << "calc " << data.calc_id << "\n";
    body << "count " << data.cells.size() << "\n";
    char buf[80];
    for (const auto& [label, cell] : data.cells) {
        body << "cell " << label;
        for (const auto& iv : cell.box) {
            std::snprintf(buf, sizeof buf, " %.17g %.17g", iv.lo(), iv.hi());
            body << buf;
        }
        body << " " << cell.depth << " " << static_cast<int>(cell.mask) << "\n";
    }
    std::ofstream out(path);
    out << "pentaver-checkpoint-v1\n" << body.str();
    std::snprintf(buf, sizeof buf, "checksum %016" PRIx64 "\n",
                  fnv1a(body.str()));
    out << buf;
}

CheckpointData read_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ChecksumMismatch("checkpoint: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != "pentaver-checkpoint-v1")
        throw ChecksumMismatch("checkpoint: bad header");
    std::ostringstream body;
    std::string checksum_line;
    while (std::getline(in, line)) {
        if (line.rfind("checksum ", 0) == 0) {
            checksum_line = line;
            break;
        }
        body << line << "\n";
    }
    if (checksum_line.empty())
        throw ChecksumMismatch("checkpoint: missing checksum");
    char buf[80];
    std::snprintf(buf, sizeof buf, "checksum %016" PRIx64, fnv1a(body.str()));
    if (checksum_line != buf)
        throw ChecksumMismatch("checkpoint: checksum mismatch");

    CheckpointData data;
    std::istringstream is(body.str());
    std::string word;
    is >> word >> data.calc_id;
    if (word != "calc") throw ChecksumMismatch("checkpoint: bad calc line");
    std::size_t count = 0;
    is >> word >> count;
    if (word != "count") throw ChecksumMismatch("checkpoint: bad count line");
    for (std::size_t k = 0; k < count; ++k) {
        std::string label;
        is >> word >> label;
        if (word != "cell") throw ChecksumMismatch("checkpoint: bad cell line");
        Cell c;
        for (auto& iv : c.box) {
            double lo, hi;
            is >> lo >> hi;
            iv = Interval(lo, hi);
        }
        int mask;
        is >> c.depth >> mask;
        if (!is) throw ChecksumMismatch("checkpoint: truncated");
        c.mask = static_cast<std::uint8_t>(mask);
        data.cells.emplace_back(label, c);
    }
    return data;
}

}  // namespace pentaver

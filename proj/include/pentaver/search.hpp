#pragma once

#include <functional>
#include <optional>

#include "pentaver/report.hpp"
#include "pentaver/taylor.hpp"

namespace pentaver {

// Checkpoint file failed its checksum or structural validation.
struct ChecksumMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// All coordinates of a cell are points; nothing left to bisect.
struct ZeroWidth : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Param : std::uint8_t { Y, X };

// A product of closed intervals in the owning calculation's parametrization,
// plus the subdivision depth and the mask of pinned coordinates.
struct Cell {
    std::array<Interval, 6> box;
    int depth = 0;
    std::uint8_t mask = 0;  // bit i set: coordinate i is pinned, never split

    bool pinned(int i) const { return (mask >> i) & 1; }
    void pin(int i) { mask = static_cast<std::uint8_t>(mask | (1u << i)); }
};

// Bisect the widest unmasked coordinate; children cover the parent exactly.
std::pair<Cell, Cell> split(const Cell& cell);

// A linear combination of evaluable functions plus a constant.
struct LinearExpr {
    struct Atom {
        FnId fn;
        Interval coeff{1.0};
    };
    std::vector<Atom> atoms;
    Interval constant{0.0};

    template <class T>
    T eval(const std::array<T, 6>& x) const {
        T acc = ScalarFrom<T>::constant(constant);
        for (const auto& a : atoms)
            acc = acc + ScalarFrom<T>::constant(a.coeff) * eval_fn<T>(a.fn, x);
        return acc;
    }
};

// One disjunct of a calculation: a conjunction of comparisons, all of which
// must hold over the whole cell for the clause to discharge it.
struct Clause {
    std::string label;
    struct Cmp {
        LinearExpr expr;
        bool upper = true;  // upper: sup expr <= rhs; else inf expr >= rhs
        Interval rhs{0.0};
        bool strict = false;
        bool taylor = false;  // use the second-order bound as well
    };
    std::vector<Cmp> cmps;
    // single-comparison upper clauses may be verified on a monotone face
    bool allow_monotone_restrict() const {
        return cmps.size() == 1 && cmps[0].upper;
    }
};

// Constraint eta^2(face) = 2 solved for one coordinate.
struct BoundaryConstraint {
    FnId eta_fn = FnId::EtaSq126;
    int solve_coord = 5;
};

// Verification tight at a single domain corner: if the main expression is
// monotone toward the corner on a cell containing it, its supremum there is
// the corner value, which is known analytically to satisfy the bound.
struct TightCorner {
    std::array<double, 6> point;
    std::array<int, 6> dir;  // -1: corner at lo, +1: corner at hi, 0: pinned
    std::string axiom;       // the analytic fact relied on
};

// A sub-verification of a calculation (corner cases, boundary manifolds,
// box decompositions).
struct CalcPart {
    std::string label;
    std::array<Interval, 6> domain;
    std::array<bool, 6> pinned{};
    std::optional<BoundaryConstraint> boundary;
    bool use_dimred = false;
    std::optional<TightCorner> tight_corner;
};

// The negative-partials conjunction mode (corner-cell derivative signs).
struct PartialsNegative {
    FnId fn = FnId::Vor;
    std::vector<int> indices;
};

// Declarative description of one calculation.
struct CalcSpec {
    std::string id;
    std::string description;
    Param param = Param::Y;
    std::vector<Clause> clauses;
    std::vector<CalcPart> parts;
    std::vector<int> slide_vertices;        // dimension reduction, subset of {0,1,2}
    std::vector<std::pair<int, int>> ties;  // (src, dst): box[dst] mirrors box[src]
    std::optional<PartialsNegative> partials;
    double slop = 0.0;
    std::vector<FnId> taylor_fns;  // functions wanting second-partial tables
    int table_subdivisions = 4;
    bool feasibility_check = true;  // discard cells with delta <= 0
};

struct Budget {
    int max_depth = 40;
    std::uint64_t max_cells = 5000000;
    double wall_seconds = 0.0;  // 0 = unlimited
    int workers = 0;            // 0 = library default
};

struct SearchOptions {
    std::string cache_dir;        // table cache ("" disables)
    std::string checkpoint_path;  // where to write survivors ("" disables)
    bool parallel = true;
    // Observer for processed leaves (discards and survivors); used by the
    // partition bookkeeping tests.  Only honored in serial runs.
    std::function<void(const Cell&, bool discarded)> leaf_sink;
};

// The stuck-face decomposition of the dimension-reduction argument: pins,
// for every admissible assignment of a binding constraint to each sliding
// vertex, the bound coordinate to its domain lower face.
std::vector<Cell> apply_dimension_reduction(const CalcSpec& calc,
                                            const CalcPart& part);

// Attempts to restrict the cell to the face where expr is maximal, using
// fixed gradient signs; returns the restricted cell when any coordinate
// moved.
std::optional<Cell> monotonicity_restrict(const LinearExpr& expr,
                                          const Cell& cell, Param param,
                                          double magnitude_bound);

// Encloses the solutions of eta^2 = 2 along the designated coordinate;
// returns nothing when the constraint surface misses the cell.
std::optional<Interval> boundary_solve(const BoundaryConstraint& bc,
                                       const Cell& cell, Param param);

// Runs the subdivision search.
VerificationReport verify(const CalcSpec& calc, const Budget& budget,
                          const SearchOptions& opts = {});

// Resumes from a checkpoint produced by an exhausted run.
VerificationReport resume(const CalcSpec& calc, const std::string& checkpoint,
                          const Budget& budget, const SearchOptions& opts = {});

// Checkpoint IO (exposed for the CLI and tests).
struct CheckpointData {
    std::string calc_id;
    std::vector<std::pair<std::string, Cell>> cells;  // (part label, cell)
};
void write_checkpoint(const std::string& path, const CheckpointData& data);
CheckpointData read_checkpoint(const std::string& path);

}  // namespace pentaver

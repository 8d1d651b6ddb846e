#include "pentaver/report.hpp"

#include <json.hpp>

#include <sstream>

namespace pentaver {

void VerificationReport::absorb(const VerificationReport& p) {
    cells_considered += p.cells_considered;
    leaves_discarded += p.leaves_discarded;
    internal_splits += p.internal_splits;
    survivors += p.survivors;
    for (const auto& [k, v] : p.discards) discards[k] += v;
    max_depth = std::max(max_depth, p.max_depth);
    elapsed_seconds += p.elapsed_seconds;
    budget_exhausted = budget_exhausted || p.budget_exhausted;
    verified = verified && p.verified;
    parts.push_back(p);
}

namespace {

void render_text_one(const VerificationReport& r, std::ostringstream& os,
                     int indent) {
    std::string pad(indent, ' ');
    os << pad << r.calc_id << ": "
       << (r.verified ? "verified"
                      : (r.budget_exhausted ? "BUDGET EXHAUSTED" : "NOT verified"))
       << "\n";
    os << pad << "  cells considered: " << r.cells_considered
       << "  (splits " << r.internal_splits << ", leaves discarded "
       << r.leaves_discarded << ", survivors " << r.survivors << ")\n";
    os << pad << "  recursion depth: " << r.max_depth
       << "   slop: " << r.slop << "   elapsed: " << r.elapsed_seconds
       << " s\n";
    if (!r.discards.empty()) {
        os << pad << "  discards by reason:\n";
        for (const auto& [k, v] : r.discards)
            os << pad << "    " << k << ": " << v << "\n";
    }
    if (!r.checkpoint_path.empty())
        os << pad << "  checkpoint: " << r.checkpoint_path << "\n";
    if (!r.note.empty()) os << pad << "  note: " << r.note << "\n";
    for (const auto& p : r.parts) render_text_one(p, os, indent + 2);
}

nlohmann::json to_json(const VerificationReport& r) {
    nlohmann::json j;
    j["schema"] = "pentaver-report-v1";
    j["calc_id"] = r.calc_id;
    j["verified"] = r.verified;
    j["cells_considered"] = r.cells_considered;
    j["leaves_discarded"] = r.leaves_discarded;
    j["internal_splits"] = r.internal_splits;
    j["survivors"] = r.survivors;
    j["discards"] = r.discards;
    j["max_depth"] = r.max_depth;
    j["elapsed_seconds"] = r.elapsed_seconds;
    j["slop"] = r.slop;
    j["budget_exhausted"] = r.budget_exhausted;
    if (!r.checkpoint_path.empty()) j["checkpoint"] = r.checkpoint_path;
    if (!r.note.empty()) j["note"] = r.note;
    if (!r.parts.empty()) {
        nlohmann::json parts = nlohmann::json::array();
        for (const auto& p : r.parts) parts.push_back(to_json(p));
        j["parts"] = parts;
    }
    return j;
}

}  // namespace

std::string render_text(const VerificationReport& r) {
    std::ostringstream os;
    render_text_one(r, os, 0);
    return os.str();
}

std::string render_json(const VerificationReport& r) {
    return to_json(r).dump(2);
}

}  // namespace pentaver

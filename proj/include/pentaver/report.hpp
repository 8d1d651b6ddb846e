#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace pentaver {

// Outcome of one verification search (or one case of a multi-case
// verification).  "Not verified" is inconclusive, never a counterexample.
struct VerificationReport {
    std::string calc_id;
    bool verified = false;
    std::uint64_t cells_considered = 0;
    std::uint64_t leaves_discarded = 0;
    std::uint64_t internal_splits = 0;
    std::uint64_t survivors = 0;
    std::map<std::string, std::uint64_t> discards;  // reason -> leaf count
    int max_depth = 0;
    double elapsed_seconds = 0.0;
    double slop = 0.0;
    bool budget_exhausted = false;
    std::string checkpoint_path;
    std::string note;
    std::vector<VerificationReport> parts;

    // Fold a sub-case into this aggregate report.
    void absorb(const VerificationReport& p);
};

std::string render_text(const VerificationReport& r);
std::string render_json(const VerificationReport& r);

}  // namespace pentaver

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace mgonal {

struct CellFailure {
    std::string cell;    ///< sweep coordinates, e.g. "tuple=(1,1,1,2) m=12 A=3"
    std::string detail;  ///< what was expected and what was observed
};

/// Outcome of one verification sweep. `failures` empty <=> the claim held on
/// every asserted cell. Skipped cells (infeasible or out of a theorem's
/// range) and informational notes are kept separate so a pass is never
/// silently weakened. Runtime is reported in deterministic work units
/// (sieve words shifted, search nodes visited), not wall-clock, so reports
/// are byte-identical across machines.
struct VerificationReport {
    std::string claim;
    std::uint64_t seed = 0;
    std::uint64_t cells = 0;
    std::vector<std::string> skipped;
    std::vector<CellFailure> failures;
    std::vector<std::string> notes;
    std::map<std::string, std::string> params;
    std::uint64_t sieve_words = 0;
    std::uint64_t search_nodes = 0;

    bool pass() const { return failures.empty(); }

    std::string to_json() const;  ///< schema 1, keys sorted, 2-space indent
    std::string to_csv() const;   ///< kind,cell,detail rows after a summary row
    std::string to_text() const;  ///< human-readable summary
};

}  // namespace mgonal

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mgonal/bitset.hpp"
#include "mgonal/form.hpp"

namespace mgonal {

class SieveCache;

enum class SearchOutcome { found, not_represented, budget_exhausted };

struct SearchResult {
    SearchOutcome outcome = SearchOutcome::not_represented;
    std::optional<Representation> witness;  // present iff outcome == found
    std::uint64_t nodes = 0;
};

// Exact depth-first search for form(x) == n, largest coefficient first.
// Per-variable bounds are exact (a_i * P_m(x_i) <= remaining target), so
// `not_represented` is a proof, distinct from running out of budget.
SearchResult find_representation(const MGonalForm& form, std::int64_t n,
                                 const SearchConfig& cfg = {});

// Convenience wrapper; throws if the default budget is ever exhausted.
bool represents(const MGonalForm& form, std::int64_t n);

// Representability over [lo, hi] as a bitmap: bit i <=> lo + i represented.
class RangeBitmap {
public:
    RangeBitmap(std::int64_t lo, std::int64_t hi, DynBitset bits);

    std::int64_t lo() const { return lo_; }
    std::int64_t hi() const { return hi_; }
    bool test_value(std::int64_t v) const;
    bool test_index(std::size_t i) const { return test_value(lo_ + static_cast<std::int64_t>(i)); }
    bool all() const;
    std::optional<std::int64_t> first_missing() const;

private:
    std::int64_t lo_;
    std::int64_t hi_;
    DynBitset bits_;  // indexed by value over [0, hi]
};

// Value-set convolution sieve: one shift-OR pass per coefficient over the
// scaled m-gonal values. Exact over the window, and the workhorse behind
// truant finding and universality checks.
RangeBitmap represents_range(const MGonalForm& form, std::int64_t lo, std::int64_t hi);

// Least positive integer <= limit the form fails to represent. Probes
// geometrically growing windows first, since early gaps are the common case
// during escalation.
std::optional<std::int64_t> truant(const MGonalForm& form, std::int64_t limit);

// Write n as A(m-2) + B with B in the window [window_lo, window_lo + m-3].
TargetClass decompose(std::int64_t n, std::int64_t m, std::int64_t window_lo);

// Reachability of {0,1}-assignments only: bit s <=> some subset of the
// coefficients sums to s. Oracle for completeness-style properties.
DynBitset subset_sums(const std::vector<std::int64_t>& coeffs, std::int64_t cap);
bool is_subset_complete(const std::vector<std::int64_t>& coeffs);  // covers [0, sum]

// Optional persistent bitmap cache consulted by represents_range for large
// windows; see cache.hpp. Not owned. Pass nullptr to detach.
void set_sieve_cache(SieveCache* cache);
SieveCache* sieve_cache();

// Deterministic work counter for the exact search (nodes visited).
std::uint64_t search_node_count();
void reset_search_node_count();

}  // namespace mgonal

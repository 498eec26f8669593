#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "mgonal/form.hpp"

namespace mgonal {

/// True iff `coeffs` is a valid escalation prefix: it starts with 1, is
/// nondecreasing, and each entry is at most 1 + (sum of the entries before
/// it).  The empty prefix is valid.
bool is_escalator_prefix(const std::vector<std::int64_t>& coeffs);

/// All escalation prefixes of exactly `len` coefficients, in lexicographic
/// order.  `len == 4` yields 27 prefixes.
std::vector<std::vector<std::int64_t>> admissible_prefixes(int len);

/// A family of forms sharing a short coefficient prefix that cover every
/// value in [1, m-4] yet miss one specific larger value.  Instances are
/// produced by completing the prefix to coefficient sum m-4.
struct CoverageGapFamily {
    std::string name;                      ///< stable identifier, e.g. "A3"
    std::vector<std::int64_t> prefix;      ///< leading coefficients
    std::vector<std::int64_t> forced_tail; ///< coefficients appended verbatim
    std::int64_t min_filler = 0;           ///< lower bound for free fillers
    std::int64_t min_m = 0;                ///< smallest m the family applies to
    std::int64_t miss_a = 0;               ///< missed value is a*(m-2) + b
    std::int64_t miss_b = 0;

    /// The value the completed form must fail to represent, for a given m.
    std::int64_t missed_value(std::int64_t m) const;
};

/// Families keyed by prefixes of at most four coefficients.  Any
/// four-coefficient escalation prefix extending one of these inherits the
/// family's coverage gap, which is what eliminates 22 of the 27 prefixes.
const std::vector<CoverageGapFamily>& rank4_gap_families();

/// Families keyed by five-coefficient prefixes (with forced tails).  These
/// eliminate six of the 28 one-step extensions of the surviving prefixes.
const std::vector<CoverageGapFamily>& rank5_gap_families();

/// The four-coefficient prefixes not covered by any rank-4 gap family,
/// in lexicographic order (five prefixes).
std::vector<std::vector<std::int64_t>> surviving_prefixes();

/// The five-coefficient candidate list: every one-step escalation of a
/// surviving prefix, minus the prefixes of the rank-5 gap families.
/// 22 tuples in lexicographic order.
std::vector<std::vector<std::int64_t>> quintuple_candidates();

/// Thrown by build_completion when no nondecreasing escalator completion
/// with the requested properties exists.
class CompletionInfeasible : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Extends prefix ++ forced_tail with free fillers (each >= min_filler,
/// nondecreasing, escalator-bounded) until the coefficient sum is exactly
/// m - 4.  Requires m - 4 > sum(prefix) + sum(forced_tail); throws
/// std::invalid_argument otherwise, and CompletionInfeasible when the gap
/// cannot be landed exactly.
MGonalForm build_completion(std::int64_t m,
                            const std::vector<std::int64_t>& prefix,
                            const std::vector<std::int64_t>& forced_tail,
                            std::int64_t min_filler = 0);

/// Like build_completion, but explores filler choices in a random order, so
/// repeated calls sample different valid completions of the same gap.
MGonalForm build_completion_sampled(std::int64_t m,
                                    const std::vector<std::int64_t>& prefix,
                                    const std::vector<std::int64_t>& forced_tail,
                                    std::int64_t min_filler,
                                    std::mt19937_64& rng);

/// Outcome of instantiating a gap family at a specific m.
struct CounterexampleCheck {
    MGonalForm form;            ///< the completed form, coefficient sum m-4
    bool covers_initial = false; ///< represents every value in [1, m-4]
    bool misses_target = false;  ///< fails to represent missed_value(m)
    std::int64_t target = 0;

    bool ok() const { return covers_initial && misses_target; }
};

/// Builds the family's completion at m and verifies both halves of the
/// counterexample: full coverage of [1, m-4] and the specific miss.
/// Propagates CompletionInfeasible when no completion exists at this m.
CounterexampleCheck verify_counterexample(const CoverageGapFamily& family,
                                          std::int64_t m);

} // namespace mgonal

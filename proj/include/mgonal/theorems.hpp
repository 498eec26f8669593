#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mgonal/escalate.hpp"
#include "mgonal/form.hpp"
#include "mgonal/report.hpp"

namespace mgonal {

/// Sweep parameters shared by the verification drivers. Zeroed ranges mean
/// "use the claim's default box"; univ_bound 0 resolves per claim.
struct SweepBox {
    std::int64_t m_lo = 0;
    std::int64_t m_hi = 0;
    std::int64_t a_lo = 0;
    std::int64_t a_hi = -1;       ///< empty range = default
    std::int64_t b_abs = 0;       ///< |B| cap where a criterion sweeps B freely
    std::int64_t univ_bound = 0;  ///< 0 = per-claim default
    int tail_samples = 6;         ///< random completions sampled per cell
    std::uint64_t seed = 20260820;
    int workers = 1;
};

/// Soundness sweep for the eight rank-4 representability criteria: whenever
/// a criterion predicts A(m-2)+B is represented, the sieve must agree.
/// Converse gaps (represented but not predicted) are counted in notes.
/// A few predicted cells per (criterion, m) are re-derived through the
/// two-equation lattice solver as an independent cross-check.
VerificationReport verify_pair_criteria(const SweepBox& box = {});

/// Window sweep for the rank-5 forms, one case at a time:
/// case 1: eighteen quintuples, window B in [-1, s];
/// case 2: (1,1,1,1,4) and (1,1,1,1,5), window B in [-2, s-1] except the
///         single value m-4, whose status is recorded but never asserted;
/// case 3: (1,1,2,2,2), split by A mod 8 with its own windows.
VerificationReport verify_window_coverage(int window_case, const SweepBox& box = {});

/// All three window cases merged into one report.
VerificationReport verify_window_coverage_all(const SweepBox& box = {});

/// Consecutive-run transfer: given a form covering [1, m-4] (checked; a
/// violation skips rather than fails), if its first i coefficients cover the
/// run N .. N + (a_1+...+a_i), the full form must cover N .. N + (m-4).
VerificationReport verify_consecutive(const MGonalForm& form, std::size_t i,
                                      std::int64_t N);

/// Coverage-gap families: for each swept m, a completion to coefficient sum
/// m-4 covers [1, m-4] yet misses the family's stated target. rank5 = false
/// sweeps the short-prefix families, true the quintuple families.
VerificationReport verify_gap_families(bool rank5, const SweepBox& box = {});

/// Escalation thresholds for the 21 certified quintuples: per (tuple, m),
/// the escalation oracle must match the reachable-sum prediction (m-4
/// whenever a completion can land on coefficient sum m-5, smaller on the
/// few small-m cells where it cannot; those cells are counted in notes).
/// Also checks, on sampled random completions, that covering [1, m-4]
/// implies no missed value up to the universality bound. (1,1,2,4,8) is
/// reported informationally, never asserted.
VerificationReport verify_gamma_table(const SweepBox& box = {});

/// Minimal universal ranks: the all-ones family over m in [3, 20] against
/// its closed form, and the (r-1 ones, then copies of r) family on its
/// formula cells plus spot cells for the small-r variants.
VerificationReport verify_min_rank(const SweepBox& box = {});

/// Fibonacci-coefficient forms: for each swept m, the minimal n >= 5 whose
/// coefficient sum reaches m-4 yields a universal form.
VerificationReport verify_fibonacci(const SweepBox& box = {});

/// One more than the largest coefficient sum strictly below m-4 reachable
/// from `prefix` by escalation appends (each new coefficient between the
/// previous one and current-sum + 1). This predicts the escalation oracle's
/// threshold for prefixes whose completions at sum >= m-4 are universal.
std::int64_t predicted_gamma(const std::vector<std::int64_t>& prefix,
                             std::int64_t m);

/// Minimal-rank probe result. `rank` is the least rank whose form has no
/// missed value up to `univ_bound`; `prev_miss` is a concrete witness missed
/// at rank-1 (absent only for rank 1). `certified` marks that the
/// threshold certificate (not just the sieve) applied at `rank`.
struct EllResult {
    int rank = 0;
    std::optional<std::int64_t> prev_miss;
    std::int64_t univ_bound = 0;
    bool certified = false;
};

/// Minimal n with the n-ones form universal (empirically, up to bound;
/// 0 resolves to max(10^5, 50*(m-2))).
EllResult ell_plain(std::int64_t m, std::int64_t univ_bound = 0);

/// Minimal n with the form of (r-1) ones followed by n-(r-1) copies of r
/// universal. Requires 2 <= r < m-3.
EllResult ell_r(std::int64_t m, std::int64_t r, std::int64_t univ_bound = 0);

/// Closed forms for the minimal ranks, where established: all-ones for any
/// m >= 3; the r-family for 5 <= r < m-3 and for r in {2, 3, 4} above their
/// per-branch m thresholds (nullopt below them).
int ell_plain_formula(std::int64_t m);
std::optional<int> ell_r_formula(std::int64_t m, std::int64_t r);

struct FibResult {
    MGonalForm form;          ///< coefficients 1,1,2,3,5,...,F_n
    bool applicable = false;  ///< coefficient sum >= m-4
    CertifyResult cert;       ///< meaningful when applicable
};

/// Builds the n-term Fibonacci-coefficient form (n >= 5) and, when its
/// coefficient sum reaches m-4, decides universality via certify_universal.
FibResult fibonacci_universal(std::int64_t m, int n, std::int64_t univ_bound = 0);

}  // namespace mgonal

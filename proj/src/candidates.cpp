#include "mgonal/candidates.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "mgonal/checked.hpp"
#include "mgonal/search.hpp"

namespace mgonal {

namespace {

// True iff `p` is an initial segment of `seq`.
bool starts_with(const std::vector<std::int64_t>& seq,
                 const std::vector<std::int64_t>& p) {
    if (p.size() > seq.size()) return false;
    return std::equal(p.begin(), p.end(), seq.begin());
}

std::int64_t sum_of(const std::vector<std::int64_t>& v) {
    std::int64_t s = 0;
    for (std::int64_t a : v) s = checked_add(s, a);
    return s;
}

}  // namespace

bool is_escalator_prefix(const std::vector<std::int64_t>& coeffs) {
    std::int64_t sum = 0;
    std::int64_t prev = 1;
    for (std::int64_t a : coeffs) {
        if (a < prev || a > checked_add(sum, std::int64_t{1})) return false;
        sum = checked_add(sum, a);
        prev = a;
    }
    return true;
}

std::vector<std::vector<std::int64_t>> admissible_prefixes(int len) {
    if (len < 0) throw std::invalid_argument("prefix length must be nonnegative");
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> cur;
    std::function<void(std::int64_t)> extend = [&](std::int64_t sum) {
        if (static_cast<int>(cur.size()) == len) {
            out.push_back(cur);
            return;
        }
        const std::int64_t lo = cur.empty() ? 1 : cur.back();
        const std::int64_t hi = sum + 1;
        for (std::int64_t c = lo; c <= hi; ++c) {
            cur.push_back(c);
            extend(sum + c);
            cur.pop_back();
        }
    };
    extend(0);
    return out;
}

std::int64_t CoverageGapFamily::missed_value(std::int64_t m) const {
    return checked_add(checked_mul(miss_a, checked_sub(m, std::int64_t{2})), miss_b);
}

const std::vector<CoverageGapFamily>& rank4_gap_families() {
    // min_m is the smallest m with m - 4 strictly above the prefix sum, the
    // precondition for extending the prefix to coefficient sum m - 4.
    static const std::vector<CoverageGapFamily> families = {
        {"A1", {1, 1, 1, 3}, {}, 0, 11, 2, 0},
        {"A2", {1, 1, 1, 4}, {}, 0, 12, 2, 0},
        {"A3", {1, 1, 2, 5}, {}, 0, 14, 2, 2},
        {"A4", {1, 1, 3}, {}, 0, 10, 2, -3},
        {"A5", {1, 2}, {}, 0, 8, 1, 0},
    };
    return families;
}

const std::vector<CoverageGapFamily>& rank5_gap_families() {
    // min_m comes from each family's admissibility threshold on m - 4: the
    // coefficient sum of the shortest completion obeying the forced tail and
    // filler bound, plus 4.
    static const std::vector<CoverageGapFamily> families = {
        {"B1", {1, 1, 1, 2, 5}, {11}, 0, 36, 5, 5},
        {"B2", {1, 1, 1, 2, 6}, {11, 23}, 0, 72, 5, 11},
        {"B3", {1, 1, 2, 2, 6}, {6}, 12, 40, 5, 6},
        {"B4", {1, 1, 2, 2, 7}, {13}, 19, 68, 5, 13},
        {"B5", {1, 1, 2, 3, 7}, {14}, 25, 82, 14, 14},
        {"B6", {1, 1, 2, 3, 8}, {15}, 0, 49, 7, 15},
    };
    return families;
}

std::vector<std::vector<std::int64_t>> surviving_prefixes() {
    std::vector<std::vector<std::int64_t>> out;
    for (const auto& p : admissible_prefixes(4)) {
        bool killed = false;
        for (const auto& fam : rank4_gap_families()) {
            if (starts_with(p, fam.prefix)) {
                killed = true;
                break;
            }
        }
        if (!killed) out.push_back(p);
    }
    return out;
}

std::vector<std::vector<std::int64_t>> quintuple_candidates() {
    std::vector<std::vector<std::int64_t>> out;
    for (const auto& p : surviving_prefixes()) {
        const std::int64_t sum = sum_of(p);
        for (std::int64_t c = p.back(); c <= sum + 1; ++c) {
            std::vector<std::int64_t> q = p;
            q.push_back(c);
            bool excluded = false;
            for (const auto& fam : rank5_gap_families()) {
                if (q == fam.prefix) {
                    excluded = true;
                    break;
                }
            }
            if (!excluded) out.push_back(std::move(q));
        }
    }
    return out;
}

namespace {

// Depth-first filler search shared by the deterministic and sampled
// completion builders. Candidate fillers at each level are visited in the
// order produced by `order`.
bool fill_gap(std::int64_t remaining, std::int64_t last, std::int64_t sum,
              std::int64_t min_filler, std::vector<std::int64_t>& fill,
              const std::function<void(std::vector<std::int64_t>&)>& order) {
    if (remaining == 0) return true;
    const std::int64_t lo = std::max(last, std::max(min_filler, std::int64_t{1}));
    const std::int64_t hi = std::min(remaining, checked_add(sum, std::int64_t{1}));
    if (lo > hi) return false;
    std::vector<std::int64_t> cand;
    cand.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t f = lo; f <= hi; ++f) cand.push_back(f);
    order(cand);
    for (std::int64_t f : cand) {
        fill.push_back(f);
        if (fill_gap(remaining - f, f, sum + f, min_filler, fill, order)) return true;
        fill.pop_back();
    }
    return false;
}

MGonalForm complete_with_order(
    std::int64_t m, const std::vector<std::int64_t>& prefix,
    const std::vector<std::int64_t>& forced_tail, std::int64_t min_filler,
    const std::function<void(std::vector<std::int64_t>&)>& order) {
    std::vector<std::int64_t> base = prefix;
    base.insert(base.end(), forced_tail.begin(), forced_tail.end());
    if (!is_escalator_prefix(base)) {
        throw std::invalid_argument("completion base " + coeff_list_str(base) +
                                    " is not an escalation prefix");
    }
    const std::int64_t base_sum = sum_of(base);
    const std::int64_t goal = checked_sub(m, std::int64_t{4});
    if (goal <= base_sum) {
        std::ostringstream os;
        os << "completion requires m - 4 > " << base_sum << ", got m = " << m;
        throw std::invalid_argument(os.str());
    }
    std::vector<std::int64_t> fill;
    const std::int64_t last = base.empty() ? 1 : base.back();
    if (!fill_gap(goal - base_sum, last, base_sum, min_filler, fill, order)) {
        std::ostringstream os;
        os << "no completion of (" << coeff_list_str(base) << ") to sum "
           << goal << " with fillers >= " << min_filler;
        throw CompletionInfeasible(os.str());
    }
    base.insert(base.end(), fill.begin(), fill.end());
    return MGonalForm(m, base);
}

}  // namespace

MGonalForm build_completion(std::int64_t m,
                            const std::vector<std::int64_t>& prefix,
                            const std::vector<std::int64_t>& forced_tail,
                            std::int64_t min_filler) {
    return complete_with_order(m, prefix, forced_tail, min_filler,
                               [](std::vector<std::int64_t>&) {});
}

MGonalForm build_completion_sampled(std::int64_t m,
                                    const std::vector<std::int64_t>& prefix,
                                    const std::vector<std::int64_t>& forced_tail,
                                    std::int64_t min_filler,
                                    std::mt19937_64& rng) {
    return complete_with_order(m, prefix, forced_tail, min_filler,
                               [&rng](std::vector<std::int64_t>& cand) {
                                   std::shuffle(cand.begin(), cand.end(), rng);
                               });
}

CounterexampleCheck verify_counterexample(const CoverageGapFamily& family,
                                          std::int64_t m) {
    if (m < family.min_m) {
        std::ostringstream os;
        os << "family " << family.name << " applies from m = " << family.min_m
           << ", got " << m;
        throw std::invalid_argument(os.str());
    }
    MGonalForm form = build_completion(m, family.prefix, family.forced_tail,
                                       family.min_filler);
    const std::int64_t target = family.missed_value(m);

    CounterexampleCheck check{form, false, false, target};
    check.covers_initial = represents_range(form, 1, m - 4).all();

    // Check the miss two ways: absence of the sieve bit, and an exhausted
    // exact search. Either alone would do; agreement guards both engines.
    const bool sieve_hit = represents_range(form, target, target).test_value(target);
    SearchResult dfs = find_representation(form, target);
    if (dfs.outcome == SearchOutcome::budget_exhausted) {
        throw std::runtime_error("search budget exhausted verifying miss of " +
                                 std::to_string(target));
    }
    const bool dfs_hit = dfs.outcome == SearchOutcome::found;
    if (sieve_hit != dfs_hit) {
        std::ostringstream os;
        os << "sieve and exact search disagree at " << target << " for "
           << form.str();
        throw std::logic_error(os.str());
    }
    check.misses_target = !sieve_hit;
    return check;
}

}  // namespace mgonal

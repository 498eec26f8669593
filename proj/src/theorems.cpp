#include "mgonal/theorems.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "mgonal/candidates.hpp"
#include "mgonal/checked.hpp"
#include "mgonal/lattice.hpp"
#include "mgonal/parallel.hpp"
#include "mgonal/search.hpp"

namespace mgonal {

namespace {

std::string tuple_str(const std::vector<std::int64_t>& t) {
    return "(" + coeff_list_str(t) + ")";
}

std::int64_t sum_of(const std::vector<std::int64_t>& v) {
    std::int64_t s = 0;
    for (std::int64_t a : v) s = checked_add(s, a);
    return s;
}

// Snapshot of the deterministic work counters; finish() writes the deltas.
struct WorkScope {
    std::uint64_t words0 = sieve_word_count();
    std::uint64_t nodes0 = search_node_count();
    void finish(VerificationReport& r) const {
        r.sieve_words = sieve_word_count() - words0;
        r.search_nodes = search_node_count() - nodes0;
    }
};

// Per-parallel-cell output, merged into the report in cell order so the
// result is identical for any worker count.
struct CellOut {
    std::uint64_t cells = 0;
    std::vector<CellFailure> failures;
    std::vector<std::string> skipped;
    std::vector<std::string> notes;
};

void merge_cells(VerificationReport& report, const std::vector<CellOut>& outs) {
    for (const auto& o : outs) {
        report.cells += o.cells;
        report.failures.insert(report.failures.end(), o.failures.begin(),
                               o.failures.end());
        report.skipped.insert(report.skipped.end(), o.skipped.begin(),
                              o.skipped.end());
        report.notes.insert(report.notes.end(), o.notes.begin(), o.notes.end());
    }
}

std::mt19937_64 cell_rng(std::uint64_t seed, std::uint64_t cell_index) {
    return std::mt19937_64(seed ^ (cell_index * 0x9E3779B97F4A7C15ULL) ^
                           0xD1B54A32D192ED03ULL);
}

std::string range_str(std::int64_t lo, std::int64_t hi) {
    return std::to_string(lo) + ".." + std::to_string(hi);
}

}  // namespace

// ---------------------------------------------------------------------------
// Pair criteria
// ---------------------------------------------------------------------------

VerificationReport verify_pair_criteria(const SweepBox& box) {
    VerificationReport report;
    report.claim = "pair-criteria";
    report.seed = box.seed;
    WorkScope work;

    const std::int64_t m_hi = box.m_hi > 0 ? box.m_hi : 30;
    const std::int64_t a_lo = box.a_lo;
    const std::int64_t a_hi = box.a_hi >= box.a_lo ? box.a_hi : 12;
    report.params["m_hi"] = std::to_string(m_hi);
    report.params["A"] = range_str(a_lo, a_hi);
    report.params["B"] = "|B| <= m";

    struct Cell {
        int id;
        std::int64_t m;
    };
    std::vector<Cell> cells;
    for (int id = 1; id <= pair_criteria_count(); ++id) {
        const std::int64_t s = sum_of(pair_criterion_tuple(id));
        const std::int64_t lo = std::max<std::int64_t>(
            {9, s + 5, box.m_lo > 0 ? box.m_lo : 0});
        for (std::int64_t m = lo; m <= m_hi; ++m) cells.push_back({id, m});
    }

    std::vector<CellOut> outs(cells.size());
    // Converse gaps (represented but not predicted) per criterion id,
    // aggregated after the parallel section.
    std::vector<std::uint64_t> converse(cells.size(), 0);

    parallel_for(cells.size(), box.workers, [&](std::size_t ci) {
        const auto [id, m] = cells[ci];
        CellOut& out = outs[ci];
        const auto& tuple = pair_criterion_tuple(id);
        const MGonalForm form(m, tuple);
        const std::int64_t b_abs = box.b_abs > 0 ? box.b_abs : m;
        const std::int64_t max_t =
            checked_add(checked_mul(a_hi, m - 2), b_abs);
        const RangeBitmap bits = represents_range(form, 1, max_t);

        std::vector<std::pair<std::int64_t, std::int64_t>> predicted_cells;
        for (std::int64_t A = a_lo; A <= a_hi; ++A) {
            for (std::int64_t B = -b_abs; B <= b_abs; ++B) {
                const std::int64_t target = A * (m - 2) + B;
                if (target < 1) continue;
                ++out.cells;
                const bool pred = pair_criterion(id, A, B);
                const bool hit = bits.test_value(target);
                if (pred && !hit) {
                    std::ostringstream cell, detail;
                    cell << "crit=" << id << " tuple=" << tuple_str(tuple)
                         << " m=" << m << " A=" << A << " B=" << B;
                    detail << "criterion predicts " << target
                           << " representable but the sieve disagrees";
                    out.failures.push_back({cell.str(), detail.str()});
                }
                if (!pred && hit) ++converse[ci];
                if (pred) predicted_cells.emplace_back(A, B);
            }
        }

        // Independent cross-check on a few predicted cells: the exact search
        // must find a representation and the two-equation solver must embed.
        auto rng = cell_rng(box.seed, ci);
        std::shuffle(predicted_cells.begin(), predicted_cells.end(), rng);
        const std::size_t samples =
            std::min<std::size_t>(3, predicted_cells.size());
        for (std::size_t k = 0; k < samples; ++k) {
            const auto [A, B] = predicted_cells[k];
            const PairCheck check = cross_check_pair_criterion(id, m, A, B);
            std::ostringstream cell;
            cell << "crit=" << id << " m=" << m << " A=" << A << " B=" << B;
            if (!check.sound()) {
                out.failures.push_back(
                    {cell.str(), "exact search found no representation of " +
                                     std::to_string(check.target)});
            }
            if (!check.pair.has_value()) {
                out.failures.push_back(
                    {cell.str(),
                     "two-equation solver found no embedding witness"});
            }
        }
    });

    merge_cells(report, outs);
    std::vector<std::uint64_t> per_id(static_cast<std::size_t>(pair_criteria_count()) + 1, 0);
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        per_id[static_cast<std::size_t>(cells[ci].id)] += converse[ci];
    }
    for (int id = 1; id <= pair_criteria_count(); ++id) {
        if (per_id[static_cast<std::size_t>(id)] > 0) {
            std::ostringstream note;
            note << "crit=" << id << ": "
                 << per_id[static_cast<std::size_t>(id)]
                 << " represented-but-unpredicted cells (criterion is "
                    "sufficient, not necessary)";
            report.notes.push_back(note.str());
        }
    }
    work.finish(report);
    return report;
}

// ---------------------------------------------------------------------------
// Rank-5 window coverage
// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<std::int64_t>> window_case_tuples(int window_case) {
    switch (window_case) {
        case 1: {
            std::vector<std::vector<std::int64_t>> out;
            const std::set<std::vector<std::int64_t>> excluded = {
                {1, 1, 1, 1, 4}, {1, 1, 1, 1, 5}, {1, 1, 2, 2, 2}, {1, 1, 2, 4, 8}};
            for (const auto& q : quintuple_candidates()) {
                if (excluded.count(q) == 0) out.push_back(q);
            }
            return out;
        }
        case 2:
            return {{1, 1, 1, 1, 4}, {1, 1, 1, 1, 5}};
        case 3:
            return {{1, 1, 2, 2, 2}};
        default:
            throw std::invalid_argument("window case must be 1, 2, or 3");
    }
}

}  // namespace

VerificationReport verify_window_coverage(int window_case, const SweepBox& box) {
    VerificationReport report;
    report.claim = "windows";
    report.seed = box.seed;
    report.params["case"] = std::to_string(window_case);
    WorkScope work;

    const auto tuples = window_case_tuples(window_case);
    const std::int64_t m_hi = box.m_hi > 0 ? box.m_hi : 30;
    const std::int64_t a_lo = box.a_lo;
    const std::int64_t a_hi = box.a_hi >= box.a_lo ? box.a_hi : 16;
    report.params["m_hi"] = std::to_string(m_hi);
    report.params["A"] = range_str(a_lo, a_hi);

    struct Cell {
        const std::vector<std::int64_t>* tuple;
        std::int64_t m;
    };
    std::vector<Cell> cells;
    for (const auto& t : tuples) {
        const std::int64_t s = sum_of(t);
        const std::int64_t lo =
            std::max(s + 5, box.m_lo > 0 ? box.m_lo : std::int64_t{3});
        for (std::int64_t m = lo; m <= m_hi; ++m) cells.push_back({&t, m});
    }

    std::vector<CellOut> outs(cells.size());
    // Exception-value bookkeeping (the single target m-4 in cases 2 and 3):
    // 1 = represented, 0 = not; -1 = not applicable.
    std::vector<int> exception_state(cells.size(), -1);

    parallel_for(cells.size(), box.workers, [&](std::size_t ci) {
        const auto& [tuple_p, m] = cells[ci];
        const auto& tuple = *tuple_p;
        CellOut& out = outs[ci];
        const std::int64_t s = sum_of(tuple);
        const MGonalForm form(m, tuple);
        // Case 3 sweeps B up to 13; the other windows stay within s + 2.
        const std::int64_t b_top = std::max<std::int64_t>(s + 2, 13);
        const std::int64_t max_t = checked_add(checked_mul(a_hi, m - 2), b_top);
        const RangeBitmap bits = represents_range(form, 1, max_t);

        auto assert_target = [&](std::int64_t A, std::int64_t B) {
            const std::int64_t target = A * (m - 2) + B;
            if (target < 1) return;
            ++out.cells;
            if (!bits.test_value(target)) {
                std::ostringstream cell, detail;
                cell << "tuple=" << tuple_str(tuple) << " m=" << m << " A=" << A
                     << " B=" << B;
                detail << "window target " << target << " not represented";
                out.failures.push_back({cell.str(), detail.str()});
            }
        };

        for (std::int64_t A = a_lo; A <= a_hi; ++A) {
            if (window_case == 1) {
                for (std::int64_t B = -1; B <= s; ++B) assert_target(A, B);
            } else if (window_case == 2) {
                for (std::int64_t B = -2; B <= s - 1; ++B) {
                    if (A * (m - 2) + B == m - 4) {
                        exception_state[ci] = bits.test_value(m - 4) ? 1 : 0;
                        continue;  // excluded from the claim; recorded only
                    }
                    assert_target(A, B);
                }
            } else {
                if (A % 8 != 7) {
                    for (std::int64_t B = -2; B <= s - 1; ++B) {
                        if (A * (m - 2) + B == m - 4) {
                            exception_state[ci] = bits.test_value(m - 4) ? 1 : 0;
                            continue;
                        }
                        assert_target(A, B);
                    }
                } else {
                    for (std::int64_t B = -5; B <= 13; ++B) {
                        if (B == 4) continue;  // outside the stated windows
                        assert_target(A, B);
                    }
                }
            }
        }
    });

    merge_cells(report, outs);
    if (window_case != 1) {
        std::uint64_t applicable = 0, represented = 0;
        for (int st : exception_state) {
            if (st >= 0) {
                ++applicable;
                if (st == 1) ++represented;
            }
        }
        std::ostringstream note;
        note << "excluded value m-4: represented by the rank-5 form alone in "
             << represented << " of " << applicable
             << " swept (tuple, m) cells (recorded, not asserted)";
        report.notes.push_back(note.str());
    }
    work.finish(report);
    return report;
}

VerificationReport verify_window_coverage_all(const SweepBox& box) {
    VerificationReport report;
    report.claim = "windows";
    report.seed = box.seed;
    report.params["case"] = "1,2,3";
    for (int c = 1; c <= 3; ++c) {
        VerificationReport part = verify_window_coverage(c, box);
        report.cells += part.cells;
        report.failures.insert(report.failures.end(), part.failures.begin(),
                               part.failures.end());
        report.skipped.insert(report.skipped.end(), part.skipped.begin(),
                              part.skipped.end());
        for (const auto& n : part.notes) {
            report.notes.push_back("case " + std::to_string(c) + ": " + n);
        }
        report.sieve_words += part.sieve_words;
        report.search_nodes += part.search_nodes;
    }
    return report;
}

// ---------------------------------------------------------------------------
// Consecutive-run transfer
// ---------------------------------------------------------------------------

VerificationReport verify_consecutive(const MGonalForm& form, std::size_t i,
                                      std::int64_t N) {
    if (i < 1 || i > form.rank()) {
        throw std::invalid_argument("prefix length must be in [1, rank]");
    }
    if (N < 0) throw std::invalid_argument("run start must be nonnegative");

    VerificationReport report;
    report.claim = "consecutive";
    report.params["form"] = form.str();
    report.params["i"] = std::to_string(i);
    report.params["N"] = std::to_string(N);
    WorkScope work;

    const std::int64_t m = form.order();
    const std::int64_t threshold = m - 4;

    // Hypothesis of the transfer argument: the full form covers [1, m-4].
    if (threshold >= 1) {
        const RangeBitmap base = represents_range(form, 1, threshold);
        if (!base.all()) {
            std::ostringstream os;
            os << form.str() << ": precondition fails, misses "
               << *base.first_missing() << " <= m-4";
            report.skipped.push_back(os.str());
            work.finish(report);
            return report;
        }
    }

    const std::vector<std::int64_t> prefix(form.coeffs().begin(),
                                           form.coeffs().begin() +
                                               static_cast<std::ptrdiff_t>(i));
    const std::int64_t si = sum_of(prefix);
    const MGonalForm prefix_form(m, prefix);

    report.cells = 1;
    const RangeBitmap run = represents_range(prefix_form, N, N + si);
    if (!run.all()) {
        std::ostringstream os;
        os << "prefix misses " << *run.first_missing() << " in " << N << ".."
           << (N + si) << "; premise not satisfied, conclusion not asserted";
        report.notes.push_back(os.str());
        work.finish(report);
        return report;
    }

    const RangeBitmap full = represents_range(form, N, N + threshold);
    if (!full.all()) {
        std::ostringstream cell, detail;
        cell << "form=" << form.str() << " i=" << i << " N=" << N;
        detail << "premise holds but the full form misses "
               << *full.first_missing() << " in " << N << ".."
               << (N + threshold);
        report.failures.push_back({cell.str(), detail.str()});
    }
    work.finish(report);
    return report;
}

// ---------------------------------------------------------------------------
// Coverage-gap families
// ---------------------------------------------------------------------------

VerificationReport verify_gap_families(bool rank5, const SweepBox& box) {
    VerificationReport report;
    report.claim = rank5 ? "gap-b" : "gap-a";
    report.seed = box.seed;
    WorkScope work;

    const auto& families = rank5 ? rank5_gap_families() : rank4_gap_families();

    struct Cell {
        const CoverageGapFamily* family;
        std::int64_t m;
    };
    std::vector<Cell> cells;
    for (const auto& fam : families) {
        std::int64_t lo, hi;
        if (rank5) {
            lo = std::max(fam.min_m, box.m_lo > 0 ? box.m_lo : std::int64_t{3});
            hi = box.m_hi > 0 ? box.m_hi : fam.min_m + 24;
        } else {
            lo = std::max(fam.min_m, box.m_lo > 0 ? box.m_lo : std::int64_t{12});
            hi = box.m_hi > 0 ? box.m_hi : 60;
        }
        for (std::int64_t m = lo; m <= hi; ++m) cells.push_back({&fam, m});
    }
    report.params["families"] = std::to_string(families.size());
    report.params["samples"] = std::to_string(box.tail_samples);

    std::vector<CellOut> outs(cells.size());
    parallel_for(cells.size(), box.workers, [&](std::size_t ci) {
        const auto& [fam_p, m] = cells[ci];
        const CoverageGapFamily& fam = *fam_p;
        CellOut& out = outs[ci];
        std::ostringstream cellname;
        cellname << "family=" << fam.name << " m=" << m;

        auto check_one = [&](const CounterexampleCheck& check) {
            ++out.cells;
            if (!check.covers_initial) {
                out.failures.push_back(
                    {cellname.str() + " form=" + check.form.str(),
                     "completion does not cover 1..m-4"});
            }
            if (!check.misses_target) {
                out.failures.push_back(
                    {cellname.str() + " form=" + check.form.str(),
                     "completion represents the supposedly missed value " +
                         std::to_string(check.target)});
            }
        };

        try {
            check_one(verify_counterexample(fam, m));
        } catch (const CompletionInfeasible& e) {
            out.skipped.push_back(cellname.str() + ": " + e.what());
            return;
        }

        // The claim quantifies over every completion, so also sample a few
        // random ones.
        auto rng = cell_rng(box.seed, ci);
        for (int k = 0; k < box.tail_samples; ++k) {
            MGonalForm sampled = build_completion_sampled(
                m, fam.prefix, fam.forced_tail, fam.min_filler, rng);
            CounterexampleCheck check{sampled, false, false, fam.missed_value(m)};
            check.covers_initial = represents_range(sampled, 1, m - 4).all();
            check.misses_target =
                !represents_range(sampled, check.target, check.target)
                     .test_value(check.target);
            check_one(check);
        }
    });

    merge_cells(report, outs);
    work.finish(report);
    return report;
}

// ---------------------------------------------------------------------------
// Escalation thresholds for the certified quintuples
// ---------------------------------------------------------------------------

std::int64_t predicted_gamma(const std::vector<std::int64_t>& prefix,
                             std::int64_t m) {
    if (prefix.empty()) throw std::invalid_argument("prefix must be nonempty");
    if (!is_escalator_prefix(prefix)) {
        throw std::invalid_argument("not an escalation prefix: " +
                                    tuple_str(prefix));
    }
    const std::int64_t s = sum_of(prefix);
    if (m - 4 <= s) {
        throw std::invalid_argument("prediction requires m - 4 > prefix sum");
    }
    // Breadth-first reachability over (sum, last appended coefficient),
    // keeping sums at most m-5. The answer is one past the largest sum a
    // non-terminal node can carry.
    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    std::vector<std::pair<std::int64_t, std::int64_t>> queue;
    queue.emplace_back(s, prefix.back());
    seen.insert(queue.front());
    std::int64_t best = s;
    while (!queue.empty()) {
        const auto [sum, last] = queue.back();
        queue.pop_back();
        best = std::max(best, sum);
        const std::int64_t hi = std::min(sum + 1, m - 5 - sum);
        for (std::int64_t c = last; c <= hi; ++c) {
            if (seen.insert({sum + c, c}).second) queue.emplace_back(sum + c, c);
        }
    }
    return best + 1;
}

VerificationReport verify_gamma_table(const SweepBox& box) {
    VerificationReport report;
    report.claim = "gamma-table";
    report.seed = box.seed;
    WorkScope work;

    const std::int64_t m_hi = box.m_hi > 0 ? box.m_hi : 40;
    report.params["m_hi"] = std::to_string(m_hi);
    report.params["samples"] = std::to_string(box.tail_samples);

    const std::vector<std::int64_t> pending = {1, 1, 2, 4, 8};
    struct Cell {
        std::vector<std::int64_t> tuple;
        std::int64_t m;
        bool informational;  // reported, never asserted
    };
    std::vector<Cell> cells;
    auto add_tuple = [&](const std::vector<std::int64_t>& t, bool info) {
        const std::int64_t s = sum_of(t);
        const std::int64_t lo =
            std::max(s + 5, box.m_lo > 0 ? box.m_lo : std::int64_t{3});
        for (std::int64_t m = lo; m <= m_hi; ++m) cells.push_back({t, m, info});
    };
    for (const auto& t : certified_quintuples()) add_tuple(t, false);
    add_tuple(pending, true);

    std::vector<CellOut> outs(cells.size());
    // Gap cells: the DP predicts a threshold below m-4 (no completion lands
    // on sum m-5); counted per run for the summary note.
    std::vector<int> below(cells.size(), 0);
    std::vector<int> pending_match(cells.size(), -1);

    parallel_for(cells.size(), box.workers, [&](std::size_t ci) {
        const Cell& cell = cells[ci];
        CellOut& out = outs[ci];
        const std::int64_t m = cell.m;
        const std::int64_t s = sum_of(cell.tuple);
        std::ostringstream cellname;
        cellname << "tuple=" << tuple_str(cell.tuple) << " m=" << m;

        EscalateConfig cfg;
        cfg.univ_bound = box.univ_bound > 0 ? box.univ_bound : 50 * (m - 2);
        cfg.max_depth = static_cast<int>((m - 4) - s + 2);
        const GammaResult g = gamma_prefixed(m, cell.tuple, cfg);
        const std::int64_t predicted = predicted_gamma(cell.tuple, m);
        ++out.cells;

        if (cell.informational) {
            pending_match[ci] = (g.status == GammaStatus::exact_under_bound &&
                                 g.value == m - 4)
                                    ? 1
                                    : 0;
            return;
        }

        if (g.status != GammaStatus::exact_under_bound) {
            out.failures.push_back(
                {cellname.str(), "escalation hit the depth cap; threshold is "
                                 "only a lower bound"});
        }
        if (g.value != predicted) {
            std::ostringstream detail;
            detail << "escalation threshold " << g.value
                   << " != reachable-sum prediction " << predicted
                   << " (m-4 = " << (m - 4) << ")";
            out.failures.push_back({cellname.str(), detail.str()});
        }
        if (predicted != m - 4) below[ci] = 1;

        // Second direction on sampled completions: any escalator completion
        // reaching coefficient sum m-4 covers [1, m-4], so it must have no
        // missed value up to the universality bound.
        auto rng = cell_rng(box.seed, ci);
        for (int k = 0; k < box.tail_samples; ++k) {
            std::vector<std::int64_t> coeffs = cell.tuple;
            std::int64_t sum = s;
            while (sum < m - 4) {
                std::uniform_int_distribution<std::int64_t> pick(coeffs.back(),
                                                                 sum + 1);
                const std::int64_t c = pick(rng);
                coeffs.push_back(c);
                sum += c;
            }
            ++out.cells;
            const MGonalForm completed(m, coeffs);
            const auto miss = truant(completed, cfg.univ_bound);
            if (miss) {
                std::ostringstream detail;
                detail << "sampled completion " << completed.str()
                       << " covers 1..m-4 but misses " << *miss;
                out.failures.push_back({cellname.str(), detail.str()});
            }
        }
    });

    merge_cells(report, outs);
    std::uint64_t gap_cells = 0;
    for (int b : below) gap_cells += static_cast<unsigned>(b);
    if (gap_cells > 0) {
        std::ostringstream note;
        note << gap_cells
             << " small-m cells where no escalation lands on coefficient sum "
                "m-5; the exact threshold sits below m-4 there, as predicted";
        report.notes.push_back(note.str());
    }
    std::uint64_t pend_total = 0, pend_hit = 0;
    for (int v : pending_match) {
        if (v >= 0) {
            ++pend_total;
            pend_hit += static_cast<unsigned>(v == 1);
        }
    }
    if (pend_total > 0) {
        std::ostringstream note;
        note << "tuple (1,1,2,4,8) (threshold unproven at small m): "
                "escalation matched m-4 on "
             << pend_hit << " of " << pend_total << " cells (not asserted)";
        report.notes.push_back(note.str());
    }
    work.finish(report);
    return report;
}

// ---------------------------------------------------------------------------
// Minimal universal ranks
// ---------------------------------------------------------------------------

namespace {

std::int64_t resolve_rank_bound(std::int64_t m, std::int64_t requested) {
    if (requested < 0) {
        throw std::invalid_argument("universality bound must be nonnegative");
    }
    if (requested > 0) return requested;
    return std::max<std::int64_t>(100000, checked_mul(std::int64_t{50}, m - 2));
}

// Shared scan: coeffs_for(n) names the rank-n form of the family.
template <typename CoeffsFor>
EllResult minimal_rank(std::int64_t m, std::int64_t univ_bound,
                       CoeffsFor coeffs_for) {
    const std::int64_t bound = resolve_rank_bound(m, univ_bound);
    EllResult res;
    res.univ_bound = bound;
    std::optional<std::int64_t> last_miss;
    for (int n = 1; n <= 200; ++n) {
        const MGonalForm form(m, coeffs_for(n));
        const auto t = truant(form, bound);
        if (!t) {
            res.rank = n;
            res.prev_miss = last_miss;
            res.certified =
                certify_universal(form, bound).status == CertifyStatus::certified;
            return res;
        }
        last_miss = t;
    }
    throw std::runtime_error("no universal rank found up to 200");
}

}  // namespace

EllResult ell_plain(std::int64_t m, std::int64_t univ_bound) {
    if (m < 3) throw std::invalid_argument("order must be at least 3");
    return minimal_rank(m, univ_bound, [](int n) {
        return std::vector<std::int64_t>(static_cast<std::size_t>(n), 1);
    });
}

EllResult ell_r(std::int64_t m, std::int64_t r, std::int64_t univ_bound) {
    if (m < 3) throw std::invalid_argument("order must be at least 3");
    if (r < 2 || r >= m - 3) {
        throw std::invalid_argument("requires 2 <= r < m - 3");
    }
    return minimal_rank(m, univ_bound, [r](int n) {
        std::vector<std::int64_t> coeffs;
        for (int k = 0; k < n; ++k) {
            coeffs.push_back(k < r - 1 ? 1 : r);
        }
        return coeffs;
    });
}

int ell_plain_formula(std::int64_t m) {
    if (m == 3 || m == 5 || m == 6) return 3;
    if (m == 4 || m == 7 || m == 8) return 4;
    if (m >= 9) return static_cast<int>(m - 4);
    throw std::invalid_argument("order must be at least 3");
}

std::optional<int> ell_r_formula(std::int64_t m, std::int64_t r) {
    if (r < 2 || r >= m - 3) {
        throw std::invalid_argument("requires 2 <= r < m - 3");
    }
    if (r >= 5) {
        return static_cast<int>((m - 3 + r - 1) / r + (r - 2));
    }
    if (r == 2) {
        if (m >= 12) return static_cast<int>(m / 2);
        return std::nullopt;
    }
    if (r == 3) {
        if (m % 3 != 2 && m >= 10) return static_cast<int>(m - 2);
        if (m % 3 == 2 && m >= 14) return static_cast<int>((2 * m - 4) / 3);
        return std::nullopt;
    }
    // r == 4
    if (m >= 62) return static_cast<int>((m - 2 + 3) / 4 + 2);
    return std::nullopt;
}

VerificationReport verify_min_rank(const SweepBox& box) {
    VerificationReport report;
    report.claim = "min-rank";
    report.seed = box.seed;
    WorkScope work;

    struct Cell {
        std::int64_t m;
        std::int64_t r;  // 0 = all-ones family
        int expected;
    };
    std::vector<Cell> cells;
    {
        const std::int64_t lo = box.m_lo > 0 ? box.m_lo : 3;
        const std::int64_t hi = box.m_hi > 0 ? box.m_hi : 20;
        for (std::int64_t m = lo; m <= hi; ++m) {
            cells.push_back({m, 0, ell_plain_formula(m)});
        }
    }
    // The general-formula band for r in {5, 6}, and spot cells for the
    // small-r closed forms.
    for (std::int64_t r = 5; r <= 6; ++r) {
        for (std::int64_t m = r + 4; m <= 40; ++m) {
            cells.push_back({m, r, *ell_r_formula(m, r)});
        }
    }
    for (const auto& [m, r] : std::initializer_list<std::pair<std::int64_t, std::int64_t>>{
             {12, 2}, {14, 2}, {10, 3}, {12, 3}, {14, 3}, {62, 4}}) {
        cells.push_back({m, r, *ell_r_formula(m, r)});
    }
    report.params["cells"] = std::to_string(cells.size());

    std::vector<CellOut> outs(cells.size());
    parallel_for(cells.size(), box.workers, [&](std::size_t ci) {
        const Cell& cell = cells[ci];
        CellOut& out = outs[ci];
        ++out.cells;
        std::ostringstream cellname;
        cellname << "m=" << cell.m
                 << (cell.r == 0 ? std::string(" family=ones")
                                 : " r=" + std::to_string(cell.r));
        const EllResult got = cell.r == 0
                                  ? ell_plain(cell.m, box.univ_bound)
                                  : ell_r(cell.m, cell.r, box.univ_bound);
        if (got.rank != cell.expected) {
            std::ostringstream detail;
            detail << "minimal universal rank " << got.rank
                   << " != closed form " << cell.expected;
            out.failures.push_back({cellname.str(), detail.str()});
        }
        if (got.rank > 1 && !got.prev_miss) {
            out.failures.push_back(
                {cellname.str(), "no miss witness recorded at rank - 1"});
        }
    });

    merge_cells(report, outs);
    work.finish(report);
    return report;
}

// ---------------------------------------------------------------------------
// Fibonacci-coefficient forms
// ---------------------------------------------------------------------------

FibResult fibonacci_universal(std::int64_t m, int n, std::int64_t univ_bound) {
    if (n < 5) throw std::invalid_argument("needs at least five coefficients");
    std::vector<std::int64_t> coeffs = {1, 1};
    while (static_cast<int>(coeffs.size()) < n) {
        coeffs.push_back(
            checked_add(coeffs[coeffs.size() - 1], coeffs[coeffs.size() - 2]));
    }
    FibResult res{MGonalForm(m, coeffs), false, {}};
    res.applicable = sum_of(coeffs) >= m - 4;
    if (res.applicable) {
        res.cert = certify_universal(res.form, univ_bound);
    }
    return res;
}

VerificationReport verify_fibonacci(const SweepBox& box) {
    VerificationReport report;
    report.claim = "fib";
    report.seed = box.seed;
    WorkScope work;

    const std::int64_t m_lo = box.m_lo > 0 ? box.m_lo : 10;
    const std::int64_t m_hi = box.m_hi > 0 ? box.m_hi : 40;
    report.params["m"] = range_str(m_lo, m_hi);

    std::vector<std::int64_t> ms;
    for (std::int64_t m = m_lo; m <= m_hi; ++m) ms.push_back(m);
    std::vector<CellOut> outs(ms.size());

    parallel_for(ms.size(), box.workers, [&](std::size_t ci) {
        const std::int64_t m = ms[ci];
        CellOut& out = outs[ci];
        ++out.cells;

        // Minimal n >= 5 whose coefficient sum reaches m-4.
        int n = 5;
        while (!fibonacci_universal(m, n, box.univ_bound).applicable) ++n;
        const std::int64_t bound = resolve_rank_bound(m, box.univ_bound);
        const FibResult res = fibonacci_universal(m, n, bound);
        std::ostringstream cellname;
        cellname << "m=" << m << " n=" << n;

        if (res.cert.status == CertifyStatus::open) {
            out.failures.push_back(
                {cellname.str(), "form " + res.form.str() + " misses " +
                                     std::to_string(*res.cert.first_miss)});
            return;
        }
        // The certificate path only sieves [1, m-4]; sweep the full bound so
        // the empirical claim stands on its own.
        const auto miss = truant(res.form, bound);
        if (miss) {
            out.failures.push_back(
                {cellname.str(), "form " + res.form.str() + " misses " +
                                     std::to_string(*miss) + " <= bound"});
        }
    });

    merge_cells(report, outs);
    work.finish(report);
    return report;
}

}  // namespace mgonal

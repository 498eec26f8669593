// Command-line front end: exact representability queries, candidate
// enumeration, escalation thresholds, and the claim verification sweeps.
//
// Exit codes: 0 = success / claim holds; 1 = a checked statement is false
// (value not represented, claim falsified, universality open); 2 = usage or
// precondition error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mgonal/cache.hpp"
#include "mgonal/candidates.hpp"
#include "mgonal/checked.hpp"
#include "mgonal/escalate.hpp"
#include "mgonal/form.hpp"
#include "mgonal/search.hpp"
#include "mgonal/theorems.hpp"

namespace {

using namespace mgonal;

std::vector<std::int64_t> parse_coeff_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        const std::int64_t v = std::stoll(item, &pos);
        if (pos != item.size()) {
            throw std::invalid_argument("bad coefficient list: " + text);
        }
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty coefficient list");
    return out;
}

// "12..60" or a single "20".
std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const std::int64_t v = std::stoll(text);
        return {v, v};
    }
    const std::int64_t lo = std::stoll(text.substr(0, dots));
    const std::int64_t hi = std::stoll(text.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("empty range: " + text);
    return {lo, hi};
}

void emit(const VerificationReport& report, const std::string& format,
          const std::string& out_path) {
    std::string rendered;
    if (format == "json") {
        rendered = report.to_json();
    } else if (format == "csv") {
        rendered = report.to_csv();
    } else if (format == "text") {
        rendered = report.to_text();
    } else {
        throw std::invalid_argument("unknown format: " + format);
    }
    if (out_path.empty()) {
        std::cout << rendered;
        if (!rendered.empty() && rendered.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + out_path);
        out << rendered;
        if (!rendered.empty() && rendered.back() != '\n') out << '\n';
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text << '\n';
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << text << '\n';
}

int run(int argc, char** argv) {
    CLI::App app{"Exact arithmetic for weighted polygonal-number forms"};
    app.require_subcommand(1);

    std::string cache_path;
    bool verify_cache = false;
    if (const char* env = std::getenv("MGONAL_CACHE")) cache_path = env;
    app.add_option("--cache", cache_path,
                   "sieve cache file (also read from MGONAL_CACHE)");
    app.add_flag("--verify-cache", verify_cache,
                 "recompute cache hits and compare bit for bit");

    // --- represent ---------------------------------------------------------
    auto* cmd_represent =
        app.add_subcommand("represent", "find x with form(x) = n exactly");
    std::int64_t rep_m = 0, rep_n = 0;
    std::string rep_coeffs;
    std::uint64_t rep_budget = 0;
    cmd_represent->add_option("--m", rep_m, "polygonal order m >= 3")->required();
    cmd_represent->add_option("--coeffs", rep_coeffs, "coefficients, e.g. 1,1,2")
        ->required();
    cmd_represent->add_option("--n", rep_n, "target value")->required();
    cmd_represent->add_option("--budget", rep_budget,
                              "search node budget (0 = unlimited)");

    // --- truant -------------------------------------------------------------
    auto* cmd_truant = app.add_subcommand(
        "truant", "least positive value the form does not represent");
    std::int64_t tr_m = 0, tr_limit = 0;
    std::string tr_coeffs;
    cmd_truant->add_option("--m", tr_m, "polygonal order m >= 3")->required();
    cmd_truant->add_option("--coeffs", tr_coeffs, "coefficients")->required();
    cmd_truant->add_option("--limit", tr_limit, "scan bound (default 50(m-2))");

    // --- check-universal ----------------------------------------------------
    auto* cmd_univ = app.add_subcommand(
        "check-universal", "decide universality (certified or empirical)");
    std::int64_t cu_m = 0, cu_bound = 0;
    std::string cu_coeffs;
    cmd_univ->add_option("--m", cu_m, "polygonal order m >= 3")->required();
    cmd_univ->add_option("--coeffs", cu_coeffs, "coefficients")->required();
    cmd_univ->add_option("--bound", cu_bound,
                         "empirical bound (default max(1e5, 50(m-2)))");

    // --- candidates / table1 ------------------------------------------------
    auto* cmd_cand = app.add_subcommand(
        "candidates", "admissible four-coefficient escalation prefixes");
    bool cand_surviving = false;
    cmd_cand->add_flag("--surviving", cand_surviving,
                       "only prefixes with no coverage-gap ancestor");

    auto* cmd_table = app.add_subcommand(
        "table1", "five-coefficient escalation candidates");
    bool table_certified = false;
    cmd_table->add_flag("--certified", table_certified,
                        "only tuples with a certified threshold");

    // --- gamma --------------------------------------------------------------
    auto* cmd_gamma = app.add_subcommand(
        "gamma", "escalation threshold: least N with (covers 1..N => "
                 "no missed value up to the bound)");
    std::int64_t g_m = 0, g_bound = 0;
    int g_depth = 0;
    std::string g_prefix, g_tree;
    cmd_gamma->add_option("--m", g_m, "polygonal order m >= 3")->required();
    cmd_gamma->add_option("--prefix", g_prefix,
                          "escalation prefix (default: empty, full tree)");
    cmd_gamma->add_option("--bound", g_bound,
                          "universality bound (default 50(m-2))");
    cmd_gamma->add_option("--depth", g_depth, "tree depth cap (default 12)");
    cmd_gamma->add_option("--tree", g_tree,
                          "write the escalation tree as JSON ('-' = stdout)");

    // --- ell ----------------------------------------------------------------
    auto* cmd_ell = app.add_subcommand(
        "ell", "minimal universal rank of the one-coefficient families");
    std::int64_t e_m = 0, e_r = 0, e_bound = 0;
    cmd_ell->add_option("--m", e_m, "polygonal order m >= 3")->required();
    cmd_ell->add_option("--r", e_r,
                        "repeated coefficient (default: all-ones family)");
    cmd_ell->add_option("--bound", e_bound, "universality bound");

    // --- fib ----------------------------------------------------------------
    auto* cmd_fib = app.add_subcommand(
        "fib", "universality of the Fibonacci-coefficient form");
    std::int64_t f_m = 0, f_bound = 0;
    int f_n = 0;
    cmd_fib->add_option("--m", f_m, "polygonal order m >= 3")->required();
    cmd_fib->add_option("--n", f_n, "number of coefficients (>= 5)")->required();
    cmd_fib->add_option("--bound", f_bound, "universality bound");

    // --- verify -------------------------------------------------------------
    auto* cmd_verify =
        app.add_subcommand("verify", "run a claim verification sweep");
    std::string v_claim, v_m_range, v_form, v_format = "text", v_out;
    std::int64_t v_a_hi = -1, v_b_abs = 0, v_bound = 0, v_i = 0, v_N = -1;
    int v_case = 0, v_samples = 6, v_workers = 1;
    std::uint64_t v_seed = 20260820;
    cmd_verify
        ->add_option("claim", v_claim,
                     "one of: pair-criteria, windows, consecutive, gap-a, "
                     "gap-b, gamma-table, min-rank, fib")
        ->required();
    cmd_verify->add_option("--m", v_m_range, "order range lo..hi (or one m)");
    cmd_verify->add_option("--case", v_case, "window case 1..3 (windows only)");
    cmd_verify->add_option("--a-hi", v_a_hi, "top of the A sweep");
    cmd_verify->add_option("--b-abs", v_b_abs, "|B| cap for the B sweep");
    cmd_verify->add_option("--bound", v_bound, "universality bound override");
    cmd_verify->add_option("--samples", v_samples,
                           "random completions per cell");
    cmd_verify->add_option("--seed", v_seed, "sampling seed");
    cmd_verify->add_option("--workers", v_workers, "worker threads");
    cmd_verify->add_option("--coeffs", v_form,
                           "form coefficients (consecutive only)");
    cmd_verify->add_option("--i", v_i, "prefix length (consecutive only)");
    cmd_verify->add_option("--N", v_N, "run start (consecutive only)");
    cmd_verify->add_option("--format", v_format, "text | json | csv");
    cmd_verify->add_option("--out", v_out, "write the report to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);  // prints help or the error message
        return rc == 0 ? 0 : 2;     // usage problems exit 2, help exits 0
    }

    std::unique_ptr<SieveCache> cache;
    if (!cache_path.empty()) {
        cache = std::make_unique<SieveCache>(cache_path, verify_cache);
        set_sieve_cache(cache.get());
    }

    if (cmd_represent->parsed()) {
        const MGonalForm form(rep_m, parse_coeff_list(rep_coeffs));
        SearchConfig cfg;
        if (rep_budget > 0) cfg.node_budget = rep_budget;
        const SearchResult res = find_representation(form, rep_n, cfg);
        if (res.outcome == SearchOutcome::found) {
            std::cout << form.str() << " represents " << rep_n << " at x = ("
                      << coeff_list_str(res.witness->xs) << ")\n";
            return 0;
        }
        if (res.outcome == SearchOutcome::not_represented) {
            std::cout << form.str() << " does not represent " << rep_n << "\n";
            return 1;
        }
        std::cerr << "search budget exhausted after " << res.nodes
                  << " nodes\n";
        return 2;
    }

    if (cmd_truant->parsed()) {
        const MGonalForm form(tr_m, parse_coeff_list(tr_coeffs));
        const std::int64_t limit =
            tr_limit > 0 ? tr_limit : checked_mul(50, tr_m - 2);
        const auto t = truant(form, limit);
        if (t) {
            std::cout << *t << "\n";
            return 1;
        }
        std::cout << "none up to " << limit << "\n";
        return 0;
    }

    if (cmd_univ->parsed()) {
        const MGonalForm form(cu_m, parse_coeff_list(cu_coeffs));
        const CertifyResult res = certify_universal(form, cu_bound);
        switch (res.status) {
            case CertifyStatus::certified:
                std::cout << "universal (certified, threshold " << (cu_m - 4)
                          << ")\n";
                return 0;
            case CertifyStatus::empirical:
                std::cout << "universal (empirical up to " << res.checked_bound
                          << ")\n";
                return 0;
            case CertifyStatus::open:
                std::cout << "not universal: misses " << *res.first_miss
                          << "\n";
                return 1;
        }
        return 2;
    }

    if (cmd_cand->parsed()) {
        const auto rows =
            cand_surviving ? surviving_prefixes() : admissible_prefixes(4);
        for (const auto& row : rows) std::cout << coeff_list_str(row) << "\n";
        return 0;
    }

    if (cmd_table->parsed()) {
        const auto rows = table_certified
                              ? certified_quintuples()
                              : quintuple_candidates();
        for (const auto& row : rows) std::cout << coeff_list_str(row) << "\n";
        return 0;
    }

    if (cmd_gamma->parsed()) {
        std::vector<std::int64_t> prefix;
        if (!g_prefix.empty()) prefix = parse_coeff_list(g_prefix);
        EscalateConfig cfg;
        cfg.univ_bound = g_bound;
        if (g_depth > 0) {
            cfg.max_depth = g_depth;
        } else if (!prefix.empty()) {
            // Deep enough for every chain that can stay below sum m-4.
            std::int64_t s = 0;
            for (std::int64_t a : prefix) s += a;
            cfg.max_depth =
                static_cast<int>(std::max<std::int64_t>(12, g_m - 4 - s + 2));
        } else {
            cfg.max_depth = static_cast<int>(std::max<std::int64_t>(12, g_m));
        }
        const EscalationTree tree = escalate(g_m, prefix, cfg);
        if (!g_tree.empty()) write_text_file(g_tree, tree_to_json(tree));
        std::cout << tree.max_truant << "\n";
        std::cerr << (tree.complete ? "exact" : "lower bound")
                  << " under bound " << tree.univ_bound << ", "
                  << tree.node_count << " nodes\n";
        return 0;
    }

    if (cmd_ell->parsed()) {
        const EllResult res = cmd_ell->count("--r") > 0
                                  ? ell_r(e_m, e_r, e_bound)
                                  : ell_plain(e_m, e_bound);
        std::cout << res.rank << "\n";
        std::cerr << (res.certified ? "certified" : "empirical")
                  << " under bound " << res.univ_bound;
        if (res.prev_miss) {
            std::cerr << "; rank " << (res.rank - 1) << " misses "
                      << *res.prev_miss;
        }
        std::cerr << "\n";
        return 0;
    }

    if (cmd_fib->parsed()) {
        const FibResult res = fibonacci_universal(f_m, f_n, f_bound);
        if (!res.applicable) {
            std::cout << "not covered\n";
            return 1;
        }
        switch (res.cert.status) {
            case CertifyStatus::certified:
                std::cout << "universal (certified)\n";
                return 0;
            case CertifyStatus::empirical:
                std::cout << "universal (empirical up to "
                          << res.cert.checked_bound << ")\n";
                return 0;
            case CertifyStatus::open:
                std::cout << "not universal: misses " << *res.cert.first_miss
                          << "\n";
                return 1;
        }
        return 2;
    }

    // verify
    SweepBox box;
    if (!v_m_range.empty()) {
        const auto [lo, hi] = parse_range(v_m_range);
        box.m_lo = lo;
        box.m_hi = hi;
    }
    if (v_a_hi >= 0) {
        box.a_lo = 0;
        box.a_hi = v_a_hi;
    }
    box.b_abs = v_b_abs;
    box.univ_bound = v_bound;
    box.tail_samples = v_samples;
    box.seed = v_seed;
    box.workers = v_workers;

    VerificationReport report;
    if (v_claim == "pair-criteria") {
        report = verify_pair_criteria(box);
    } else if (v_claim == "windows") {
        report = v_case > 0 ? verify_window_coverage(v_case, box)
                            : verify_window_coverage_all(box);
    } else if (v_claim == "consecutive") {
        if (v_form.empty() || v_i <= 0 || v_N < 0) {
            throw std::invalid_argument(
                "consecutive needs --m, --coeffs, --i and --N");
        }
        if (box.m_lo <= 0 || box.m_lo != box.m_hi) {
            throw std::invalid_argument("consecutive needs a single --m");
        }
        const MGonalForm form(box.m_lo, parse_coeff_list(v_form));
        report = verify_consecutive(form, static_cast<std::size_t>(v_i), v_N);
    } else if (v_claim == "gap-a") {
        report = verify_gap_families(false, box);
    } else if (v_claim == "gap-b") {
        report = verify_gap_families(true, box);
    } else if (v_claim == "gamma-table") {
        report = verify_gamma_table(box);
    } else if (v_claim == "min-rank") {
        report = verify_min_rank(box);
    } else if (v_claim == "fib") {
        report = verify_fibonacci(box);
    } else {
        throw std::invalid_argument("unknown claim: " + v_claim);
    }

    emit(report, v_format, v_out);
    return report.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const OverflowError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

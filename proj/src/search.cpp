#include "mgonal/search.hpp"

#include <atomic>
#include <stdexcept>

#include "mgonal/cache.hpp"
#include "mgonal/checked.hpp"
#include "mgonal/polygonal.hpp"

namespace mgonal {

namespace {

std::atomic<std::uint64_t> g_search_nodes{0};
SieveCache* g_cache = nullptr;

// Sieve windows below this are cheaper to recompute than to persist.
constexpr std::int64_t kCacheMinSpan = 8192;

// Variable scan order with nondecreasing P_m values. For m >= 5 the
// interleave 0, 1, -1, 2, -2, ... is monotone since P(-k) - P(k) = (m-4)k
// and P(k+1) - P(-k) = 2k+1. For m = 3 negatives duplicate nonnegatives
// (P(-k) = P(k-1)) and for m = 4 P(-k) = P(k), so scanning x = 0, 1, 2, ...
// already visits every value once, in order.
std::int64_t next_scan_x(std::int64_t m, std::int64_t x) {
    if (m <= 4) return x + 1;
    if (x > 0) return -x;
    return 1 - x;  // 0 -> 1, -k -> k+1
}

struct Dfs {
    const MGonalForm& form;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::vector<std::int64_t> xs;

    explicit Dfs(const MGonalForm& f, std::uint64_t b)
        : form(f), budget(b), xs(f.rank(), 0) {}

    // Assign variable i (largest coefficients first) toward `remaining`.
    SearchOutcome run(std::size_t i, std::int64_t remaining) {
        if (++nodes > budget) return SearchOutcome::budget_exhausted;
        const std::int64_t m = form.order();
        const std::int64_t a = form.coeffs()[i];
        if (i == 0) {
            if (remaining % a != 0) return SearchOutcome::not_represented;
            const auto x = polygonal_index(m, remaining / a);
            if (!x) return SearchOutcome::not_represented;
            xs[0] = *x;
            return SearchOutcome::found;
        }
        for (std::int64_t x = 0;; x = next_scan_x(m, x)) {
            const std::int64_t part = checked_mul(a, polygonal_number(m, x));
            if (part > remaining) break;
            xs[i] = x;
            const SearchOutcome sub = run(i - 1, remaining - part);
            if (sub != SearchOutcome::not_represented) return sub;
        }
        xs[i] = 0;
        return SearchOutcome::not_represented;
    }
};

DynBitset sieve_bits(const MGonalForm& form, std::int64_t hi) {
    DynBitset reach(static_cast<std::size_t>(hi) + 1);
    reach.set(0);
    for (const std::int64_t a : form.coeffs()) {
        const auto vals = polygonal_values_up_to(form.order(), hi / a);
        DynBitset next(static_cast<std::size_t>(hi) + 1);
        for (const std::int64_t v : vals)
            next.or_shift_from(reach, static_cast<std::size_t>(a * v));
        reach = std::move(next);
    }
    return reach;
}

}  // namespace

std::uint64_t search_node_count() { return g_search_nodes.load(std::memory_order_relaxed); }
void reset_search_node_count() { g_search_nodes.store(0, std::memory_order_relaxed); }

void set_sieve_cache(SieveCache* cache) { g_cache = cache; }
SieveCache* sieve_cache() { return g_cache; }

SearchResult find_representation(const MGonalForm& form, std::int64_t n,
                                 const SearchConfig& cfg) {
    SearchResult result;
    if (n < 0) {
        result.outcome = SearchOutcome::not_represented;
        return result;
    }
    Dfs dfs(form, cfg.node_budget);
    result.outcome = dfs.run(form.rank() - 1, n);
    result.nodes = dfs.nodes;
    g_search_nodes.fetch_add(dfs.nodes, std::memory_order_relaxed);
    if (result.outcome == SearchOutcome::found)
        result.witness = Representation::checked(form, n, dfs.xs);
    return result;
}

bool represents(const MGonalForm& form, std::int64_t n) {
    const SearchResult r = find_representation(form, n);
    if (r.outcome == SearchOutcome::budget_exhausted)
        throw std::runtime_error("represents: node budget exhausted on " + form.str());
    return r.outcome == SearchOutcome::found;
}

RangeBitmap::RangeBitmap(std::int64_t lo, std::int64_t hi, DynBitset bits)
    : lo_(lo), hi_(hi), bits_(std::move(bits)) {
    if (lo < 0 || hi < lo) throw std::invalid_argument("RangeBitmap: bad range");
    if (bits_.size() != static_cast<std::size_t>(hi) + 1)
        throw std::invalid_argument("RangeBitmap: bitset does not span [0, hi]");
}

bool RangeBitmap::test_value(std::int64_t v) const {
    if (v < lo_ || v > hi_) throw std::out_of_range("RangeBitmap: value outside range");
    return bits_.test(static_cast<std::size_t>(v));
}

bool RangeBitmap::all() const { return !first_missing().has_value(); }

std::optional<std::int64_t> RangeBitmap::first_missing() const {
    const auto c = bits_.first_clear(static_cast<std::size_t>(lo_), static_cast<std::size_t>(hi_));
    if (!c) return std::nullopt;
    return static_cast<std::int64_t>(*c);
}

RangeBitmap represents_range(const MGonalForm& form, std::int64_t lo, std::int64_t hi) {
    if (lo < 0 || hi < lo) throw std::invalid_argument("represents_range: need 0 <= lo <= hi");
    if (g_cache && hi >= kCacheMinSpan) {
        DynBitset bits =
            g_cache->get_or_compute(form, hi, [&] { return sieve_bits(form, hi); });
        return RangeBitmap(lo, hi, std::move(bits));
    }
    return RangeBitmap(lo, hi, sieve_bits(form, hi));
}

std::optional<std::int64_t> truant(const MGonalForm& form, std::int64_t limit) {
    if (limit < 1) throw std::invalid_argument("truant: limit must be >= 1");
    std::int64_t win = 64;
    for (;;) {
        if (win >= limit) win = limit;
        const RangeBitmap r = represents_range(form, 1, win);
        if (const auto miss = r.first_missing()) return miss;
        if (win == limit) return std::nullopt;
        win = (win > limit / 4) ? limit : win * 4;
    }
}

TargetClass decompose(std::int64_t n, std::int64_t m, std::int64_t window_lo) {
    if (m < 3) throw std::invalid_argument("decompose: order must be >= 3");
    const std::int64_t mod = m - 2;
    std::int64_t r = (n - window_lo) % mod;
    if (r < 0) r += mod;
    const std::int64_t b = window_lo + r;
    return TargetClass{(n - b) / mod, b, m};
}

DynBitset subset_sums(const std::vector<std::int64_t>& coeffs, std::int64_t cap) {
    if (cap < 0) throw std::invalid_argument("subset_sums: negative cap");
    DynBitset dp(static_cast<std::size_t>(cap) + 1);
    dp.set(0);
    for (const std::int64_t a : coeffs) {
        if (a <= 0) throw std::invalid_argument("subset_sums: coefficients must be positive");
        if (a > cap) continue;
        DynBitset next = dp;
        next.or_shift_from(dp, static_cast<std::size_t>(a));
        dp = std::move(next);
    }
    return dp;
}

bool is_subset_complete(const std::vector<std::int64_t>& coeffs) {
    std::int64_t sum = 0;
    for (const std::int64_t a : coeffs) sum = checked_add(sum, a);
    const DynBitset dp = subset_sums(coeffs, sum);
    return dp.all_set(0, static_cast<std::size_t>(sum));
}

}  // namespace mgonal

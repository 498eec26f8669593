#include "mgonal/lattice.hpp"

#include <stdexcept>

#include "mgonal/checked.hpp"
#include "mgonal/search.hpp"

namespace mgonal {

namespace {

std::int64_t mod_floor(std::int64_t x, std::int64_t k) {
    std::int64_t r = x % k;
    return r < 0 ? r + k : r;
}

const std::vector<std::vector<std::int64_t>>& criterion_tuples() {
    static const std::vector<std::vector<std::int64_t>> tuples = {
        {1, 1, 1, 1}, {1, 1, 1, 2}, {1, 1, 1, 4}, {1, 1, 2, 2},
        {1, 1, 2, 3}, {1, 1, 2, 4}, {1, 2, 2, 2}, {1, 2, 2, 3},
    };
    return tuples;
}

void require_id(int id) {
    if (id < 1 || id > pair_criteria_count())
        throw std::invalid_argument("pair criterion id out of range");
}

}  // namespace

bool in_exceptional_set(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("in_exceptional_set: negative input");
    while (n != 0 && n % 4 == 0) n /= 4;
    return n % 8 == 7;
}

int pair_criteria_count() { return static_cast<int>(criterion_tuples().size()); }

const std::vector<std::int64_t>& pair_criterion_tuple(int id) {
    require_id(id);
    return criterion_tuples()[static_cast<std::size_t>(id - 1)];
}

std::int64_t pair_criterion_disc(int id, std::int64_t A, std::int64_t B) {
    const auto& tuple = pair_criterion_tuple(id);
    std::int64_t s = 0;
    for (const std::int64_t a : tuple) s += a;
    // 2sA + sB - B^2
    return checked_sub(checked_add(checked_mul(2 * s, A), checked_mul(s, B)),
                       checked_mul(B, B));
}

bool pair_criterion(int id, std::int64_t A, std::int64_t B) {
    require_id(id);
    const std::int64_t disc = pair_criterion_disc(id, A, B);
    if (disc < 0) return false;
    switch (id) {
        case 1:  // <1,1,1,1>
        case 3:  // <1,1,1,4>
        case 4:  // <1,1,2,2>
            return !in_exceptional_set(disc);
        case 2:  // <1,1,1,2>: excluded exactly when A and B both vanish mod 5
            return !(mod_floor(A, 5) == 0 && mod_floor(B, 5) == 0);
        case 5:  // <1,1,2,3>: same shape mod 7
            return !(mod_floor(A, 7) == 0 && mod_floor(B, 7) == 0);
        case 6:  // <1,1,2,4>: parity-of-A / B mod 8 exclusions
            return !((mod_floor(A, 2) == 1 && mod_floor(B, 8) == 4) ||
                     (mod_floor(A, 2) == 0 && mod_floor(B, 8) == 0));
        case 7:  // <1,2,2,2>: twice an exceptional number is excluded
            return !(disc % 2 == 0 && in_exceptional_set(disc / 2));
        case 8:  // <1,2,2,3>
            return mod_floor(B, 4) != 0;
        default:
            return false;  // unreachable, require_id guards
    }
}

namespace {

// DFS over one generator's coordinates with the exact diagonal budget
// sum d_i w_i^2 <= remaining. Calls sink(w) for every exact spend.
template <typename Sink>
bool scan_vectors(const std::vector<std::int64_t>& ds, std::size_t i, std::int64_t remaining,
                  std::vector<std::int64_t>& w, const Sink& sink) {
    if (i == ds.size()) return remaining == 0 && sink(w);
    for (std::int64_t x = 0;; x = (x > 0) ? -x : 1 - x) {
        const std::int64_t used = checked_mul(ds[i], checked_mul(x, x));
        if (used > remaining) {
            // x alternates 0, 1, -1, 2, -2, ...; once a magnitude is too
            // big its mirror is too, so stop after the positive probe.
            if (x <= 0) break;
            continue;
        }
        w[i] = x;
        if (scan_vectors(ds, i + 1, remaining - used, w, sink)) return true;
    }
    w[i] = 0;
    return false;
}

}  // namespace

std::optional<PairWitness> binary_by_diagonal(const BinaryLattice& target,
                                              const DiagonalLattice& ambient) {
    if (ambient.ds.empty()) throw std::invalid_argument("binary_by_diagonal: empty lattice");
    for (const std::int64_t d : ambient.ds)
        if (d <= 0) throw std::invalid_argument("binary_by_diagonal: entries must be positive");
    if (target.q1 < 0 || target.q2 < 0) return std::nullopt;

    const auto& ds = ambient.ds;
    std::optional<PairWitness> found;
    std::vector<std::int64_t> u(ds.size(), 0);
    std::vector<std::int64_t> v(ds.size(), 0);
    scan_vectors(ds, 0, target.q1, u, [&](const std::vector<std::int64_t>& uu) {
        return scan_vectors(ds, 0, target.q2, v, [&](const std::vector<std::int64_t>& vv) {
            std::int64_t inner = 0;
            for (std::size_t i = 0; i < ds.size(); ++i)
                inner = checked_add(inner, checked_mul(ds[i], checked_mul(uu[i], vv[i])));
            if (inner != target.b) return false;
            found = PairWitness{uu, vv};
            return true;
        });
    });
    return found;
}

std::optional<std::vector<std::int64_t>> diagonal_pair_solve(
    const std::vector<std::int64_t>& ds, std::int64_t b, std::int64_t q2) {
    if (ds.empty()) throw std::invalid_argument("diagonal_pair_solve: empty lattice");
    for (const std::int64_t d : ds)
        if (d <= 0) throw std::invalid_argument("diagonal_pair_solve: entries must be positive");
    if (q2 < 0) return std::nullopt;

    std::optional<std::vector<std::int64_t>> found;
    std::vector<std::int64_t> v(ds.size(), 0);
    scan_vectors(ds, 0, q2, v, [&](const std::vector<std::int64_t>& vv) {
        std::int64_t lin = 0;
        for (std::size_t i = 0; i < ds.size(); ++i)
            lin = checked_add(lin, checked_mul(ds[i], vv[i]));
        if (lin != b) return false;
        found = vv;
        return true;
    });
    return found;
}

std::array<std::int64_t, 4> lift_even_solution(const std::array<std::int64_t, 4>& x) {
    const std::int64_t s = x[0] + x[1] + x[2] + x[3];
    if (mod_floor(s, 2) != 0)
        throw std::invalid_argument("lift_even_solution: coordinate sum must be even");
    return {(x[0] + x[1] - x[2] - x[3]) / 2, (x[0] - x[1] + x[2] - x[3]) / 2,
            (x[0] - x[1] - x[2] + x[3]) / 2, (x[0] + x[1] + x[2] + x[3]) / 2};
}

PairCheck cross_check_pair_criterion(int id, std::int64_t m, std::int64_t A, std::int64_t B) {
    const auto& tuple = pair_criterion_tuple(id);
    const MGonalForm form(m, tuple);
    PairCheck check;
    check.predicted = pair_criterion(id, A, B);
    check.target = TargetClass{A, B, m}.value();
    const SearchResult r = find_representation(form, check.target);
    if (r.outcome == SearchOutcome::budget_exhausted)
        throw std::runtime_error("cross_check_pair_criterion: budget exhausted");
    check.represented = r.outcome == SearchOutcome::found;
    check.witness = r.witness;
    check.pair = diagonal_pair_solve(tuple, B, checked_add(checked_mul(2, A), B));
    return check;
}

}  // namespace mgonal

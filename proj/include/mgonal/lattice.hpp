#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "mgonal/form.hpp"

namespace mgonal {

// Integers that are not a sum of three integer squares, i.e. exactly the
// numbers of the shape 4^l(8k+7). Several pair criteria below reduce to
// membership here.
bool in_exceptional_set(std::int64_t n);

// ---- m-uniform pair criteria --------------------------------------------
//
// Eight rank-4 coefficient tuples for which representability of the target
// A(m-2)+B by <tuple>_m is decided by a test on (A, B) alone, uniformly in
// the order m. Each test opens with the discriminant clause
// 2sA + sB - B^2 >= 0 (s = coefficient sum) and then applies either an
// exceptional-set or a congruence condition. The guaranteed direction is
// "test passes => target represented"; cross_check_pair_criterion pits the
// test against the exact search and the diagonal-lattice solver.

int pair_criteria_count();                                      // = 8
const std::vector<std::int64_t>& pair_criterion_tuple(int id);  // id in [1, count]
std::int64_t pair_criterion_disc(int id, std::int64_t A, std::int64_t B);
bool pair_criterion(int id, std::int64_t A, std::int64_t B);

// ---- diagonal lattice embeddings -----------------------------------------

// Binary quadratic lattice with Gram matrix [[q1, b], [b, q2]].
struct BinaryLattice {
    std::int64_t q1 = 0;
    std::int64_t b = 0;
    std::int64_t q2 = 0;
};

// Quaternary-or-wider diagonal lattice diag(d_1, ..., d_r).
struct DiagonalLattice {
    std::vector<std::int64_t> ds;
};

// Images of the two binary generators inside the diagonal lattice.
struct PairWitness {
    std::vector<std::int64_t> u;
    std::vector<std::int64_t> v;
};

// Exhaustive search for u, v with sum d_i u_i^2 = q1, sum d_i u_i v_i = b,
// sum d_i v_i^2 = q2. Coordinates are bounded exactly by the diagonal
// constraints, so nullopt is a proof of non-embeddability.
std::optional<PairWitness> binary_by_diagonal(const BinaryLattice& target,
                                              const DiagonalLattice& ambient);

// The change of variables behind the pair criteria: with the first
// generator pinned to (1,...,1), a solution v of
//   sum d_i v_i = b   and   sum d_i v_i^2 = q2
// certifies that diag(d) represents [[sum d_i, b], [b, q2]]. Setting
// b = B, q2 = 2A+B makes v a representation of A(m-2)+B for EVERY m >= 3,
// which is what makes the pair criteria m-uniform.
std::optional<std::vector<std::int64_t>> diagonal_pair_solve(
    const std::vector<std::int64_t>& ds, std::int64_t b, std::int64_t q2);

// Halve a quadruple of even coordinate sum through the scaled Hadamard
// matrix H/2 (orthogonal, so the sum of squares is preserved; the new
// coordinate sum is 2*x_1). Lifts solutions between the even sublattice
// and the full diagonal lattice. Throws when the coordinate sum is odd.
std::array<std::int64_t, 4> lift_even_solution(const std::array<std::int64_t, 4>& x);

// Exact search verdict vs. criterion verdict for one (A, B) cell.
struct PairCheck {
    bool predicted = false;
    bool represented = false;
    std::int64_t target = 0;
    std::optional<Representation> witness;          // when represented
    std::optional<std::vector<std::int64_t>> pair;  // diagonal_pair_solve at (A, B)
    bool sound() const { return !predicted || represented; }
};

PairCheck cross_check_pair_criterion(int id, std::int64_t m, std::int64_t A, std::int64_t B);

}  // namespace mgonal

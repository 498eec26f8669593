#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace mgonal {

// x-th generalized m-gonal number, P_m(x) = ((m-2)x^2 - (m-4)x) / 2, taken
// over all integers x. Nonnegative for every x, zero only at x = 0, and
// P_m(-1) = m-3 is the smallest positive value after P_m(1) = 1 once m > 4.
// Throws on m < 3 and on 64-bit overflow.
std::int64_t polygonal_number(std::int64_t m, std::int64_t x);

// { P_m(x) : x in Z } intersected with [0, limit], sorted ascending with
// duplicates removed (P_3 and P_4 repeat values across signs of x).
std::vector<std::int64_t> polygonal_values_up_to(std::int64_t m, std::int64_t limit);

// Some x with P_m(x) == value, or nullopt when value is not m-gonal.
// Inversion is exact: (m-4)^2 + 8(m-2)v must be a perfect square whose root
// leads to an integral x.
std::optional<std::int64_t> polygonal_index(std::int64_t m, std::int64_t value);

}  // namespace mgonal

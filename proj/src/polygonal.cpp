#include "mgonal/polygonal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mgonal/checked.hpp"

namespace mgonal {

namespace {

void require_order(std::int64_t m) {
    if (m < 3) throw std::invalid_argument("polygonal order must be >= 3");
}

// Floor square root, exact (the float estimate is corrected in __int128).
std::int64_t isqrt64(std::int64_t v) {
    if (v < 0) throw std::invalid_argument("isqrt64: negative input");
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && static_cast<__int128>(r) * r > v) --r;
    while (static_cast<__int128>(r + 1) * (r + 1) <= v) ++r;
    return r;
}

}  // namespace

std::int64_t polygonal_number(std::int64_t m, std::int64_t x) {
    require_order(m);
    // (m-2)x^2 and (m-4)x have the same parity, so the difference is even.
    const std::int64_t sq = checked_mul(x, x);
    const std::int64_t t = checked_sub(checked_mul(m - 2, sq), checked_mul(m - 4, x));
    return t / 2;
}

std::vector<std::int64_t> polygonal_values_up_to(std::int64_t m, std::int64_t limit) {
    require_order(m);
    if (limit < 0) throw std::invalid_argument("polygonal_values_up_to: negative limit");
    std::vector<std::int64_t> vals;
    vals.push_back(0);
    for (std::int64_t x = 1;; ++x) {
        const std::int64_t p = polygonal_number(m, x);
        if (p > limit) break;
        vals.push_back(p);
    }
    for (std::int64_t x = -1;; --x) {
        const std::int64_t p = polygonal_number(m, x);
        if (p > limit) break;
        vals.push_back(p);
    }
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
}

std::optional<std::int64_t> polygonal_index(std::int64_t m, std::int64_t value) {
    require_order(m);
    if (value < 0) return std::nullopt;
    if (value == 0) return 0;
    // P_m(x) = v  <=>  2(m-2)x = (m-4) +- sqrt((m-4)^2 + 8(m-2)v).
    const std::int64_t disc =
        checked_add(checked_mul(m - 4, m - 4), checked_mul(8, checked_mul(m - 2, value)));
    const std::int64_t s = isqrt64(disc);
    if (checked_mul(s, s) != disc) return std::nullopt;
    const std::int64_t den = 2 * (m - 2);
    for (const std::int64_t num : {checked_add(m - 4, s), checked_sub(m - 4, s)}) {
        if (num % den == 0) return num / den;
    }
    return std::nullopt;
}

}  // namespace mgonal

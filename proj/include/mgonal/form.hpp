#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mgonal {

// Weighted m-gonal form <a_1,...,a_n>_m with 1 <= a_1 <= ... <= a_n.
// Construction rejects empty, non-positive or out-of-order coefficients;
// unsorted input is an error, never silently reordered.
class MGonalForm {
public:
    MGonalForm(std::int64_t m, std::vector<std::int64_t> coeffs);

    std::int64_t order() const { return m_; }
    const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
    std::size_t rank() const { return coeffs_.size(); }
    std::int64_t coeff_sum() const { return sum_; }

    // sum_i a_i * P_m(x_i), checked arithmetic throughout.
    std::int64_t evaluate(std::span<const std::int64_t> xs) const;

    std::string str() const;  // e.g. "<1,1,2>_6"

    friend bool operator==(const MGonalForm&, const MGonalForm&) = default;

private:
    std::int64_t m_;
    std::vector<std::int64_t> coeffs_;
    std::int64_t sum_;
};

// Variable assignment certifying form(xs) == target; `checked` validates by
// evaluation and throws on mismatch, so holding one is holding a proof.
struct Representation {
    std::vector<std::int64_t> xs;

    static Representation checked(const MGonalForm& form, std::int64_t target,
                                  std::vector<std::int64_t> xs);
};

// Target written against the order-m grid as A(m-2) + B.
struct TargetClass {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t m = 0;

    std::int64_t value() const;
};

// Knobs for the exact search; the default budget is effectively unlimited
// at the scales this engine handles.
struct SearchConfig {
    std::uint64_t node_budget = std::uint64_t{1} << 62;
};

// "1,1,2,5" — the list syntax shared by golden tables and the CLI.
std::string coeff_list_str(const std::vector<std::int64_t>& coeffs);

}  // namespace mgonal
